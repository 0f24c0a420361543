#include "causalsurv/law_io.hpp"

#include <fstream>
#include <sstream>

namespace causalsurv {

nlohmann::json law_to_json(const LawDocument& doc) {
    nlohmann::json atoms = nlohmann::json::array();
    for (const auto& a : doc.law.atoms) {
        atoms.push_back({{"l", a.l},
                         {"a", a.a},
                         {"t0", a.t0},
                         {"t1", a.t1},
                         {"c0", a.c0},
                         {"c1", a.c1},
                         {"p", a.p}});
    }
    return {{"time_unit", doc.time_unit}, {"tau", doc.tau}, {"atoms", std::move(atoms)}};
}

LawDocument law_from_json(const nlohmann::json& j) {
    try {
        LawDocument doc;
        doc.time_unit = j.at("time_unit").get<std::string>();
        doc.tau = j.at("tau").get<Tick>();
        double tolerance = 1e-12;
        if (j.contains("mass_tolerance")) tolerance = j.at("mass_tolerance").get<double>();
        std::vector<FullAtom> atoms;
        for (const auto& ja : j.at("atoms")) {
            FullAtom a;
            a.l = ja.at("l").get<std::string>();
            a.a = ja.at("a").get<int>();
            a.t0 = ja.at("t0").get<Tick>();
            a.t1 = ja.at("t1").get<Tick>();
            a.c0 = ja.at("c0").get<Tick>();
            a.c1 = ja.at("c1").get<Tick>();
            a.p = ja.at("p").get<double>();
            atoms.push_back(std::move(a));
        }
        doc.law = make_law(std::move(atoms), tolerance);
        if (doc.tau <= 0) throw ParseError("law document: tau must be a positive tick");
        return doc;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("law document: ") + e.what());
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << content;
}

LawDocument load_law(const std::string& path) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    return law_from_json(j);
}

void save_law(const LawDocument& doc, const std::string& path) {
    write_file(path, law_to_json(doc).dump(2) + "\n");
}

nlohmann::json step_fn_to_json(const StepFn& f) {
    nlohmann::json jumps = nlohmann::json::array();
    for (std::size_t i = 0; i < f.jump_ticks().size(); ++i)
        jumps.push_back({f.jump_ticks()[i], f.jump_values()[i]});
    return {{"initial", f.initial()}, {"jumps", std::move(jumps)}};
}

StepFn step_fn_from_json(const nlohmann::json& j) {
    try {
        std::vector<std::pair<Tick, double>> jumps;
        for (const auto& jj : j.at("jumps"))
            jumps.emplace_back(jj.at(0).get<Tick>(), jj.at(1).get<double>());
        return StepFn::from_jumps(j.at("initial").get<double>(), std::move(jumps));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("step function: ") + e.what());
    }
}

nlohmann::json report_to_json(const EstimateReport& r) {
    return {{"a", r.a},           {"t", r.t},       {"method", method_name(r.method)},
            {"point", r.point},   {"se", r.se},     {"ci_low", r.ci_low},
            {"ci_high", r.ci_high}, {"n", r.n},     {"floored", r.floored}};
}

std::string records_to_csv(const std::vector<ObservedRecord>& records) {
    std::ostringstream os;
    os << "l,a,delta,x\n";
    for (const auto& r : records) os << r.l << "," << r.a << "," << r.delta << "," << r.x << "\n";
    return os.str();
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream is(line);
    while (std::getline(is, field, ',')) fields.push_back(field);
    return fields;
}

[[noreturn]] void row_error(std::size_t line_no, const std::string& what) {
    std::ostringstream os;
    os << "csv line " << line_no << ": " << what;
    throw ParseError(os.str());
}

long long parse_int(const std::string& s, std::size_t line_no, const char* what) {
    try {
        std::size_t pos = 0;
        const long long v = std::stoll(s, &pos);
        if (pos != s.size()) row_error(line_no, std::string("malformed ") + what);
        return v;
    } catch (const ParseError&) {
        throw;
    } catch (...) {
        row_error(line_no, std::string("malformed ") + what);
    }
}

}  // namespace

std::vector<ObservedRecord> records_from_csv(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    std::size_t line_no = 0;
    std::vector<ObservedRecord> out;
    while (std::getline(is, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line_no == 1) {
            if (line != "l,a,delta,x") row_error(line_no, "expected header l,a,delta,x");
            continue;
        }
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != 4) row_error(line_no, "expected 4 fields");
        ObservedRecord r;
        r.l = fields[0];
        const long long a = parse_int(fields[1], line_no, "a");
        const long long delta = parse_int(fields[2], line_no, "delta");
        const long long x = parse_int(fields[3], line_no, "x");
        if (a != 0 && a != 1) row_error(line_no, "a must be 0 or 1");
        if (delta != 0 && delta != 1) row_error(line_no, "delta must be 0 or 1");
        if (x <= 0) row_error(line_no, "x must be a positive tick");
        r.a = static_cast<int>(a);
        r.delta = static_cast<int>(delta);
        r.x = x;
        out.push_back(std::move(r));
    }
    if (line_no == 0) throw ParseError("csv: empty input");
    return out;
}

std::vector<ObservedRecord> load_records_csv(const std::string& path) {
    return records_from_csv(read_file(path));
}

void save_records_csv(const std::vector<ObservedRecord>& records, const std::string& path) {
    write_file(path, records_to_csv(records));
}

}  // namespace causalsurv
