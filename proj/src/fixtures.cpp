#include "causalsurv/fixtures.hpp"

namespace causalsurv {

LawDocument world_no_censoring() {
    LawDocument doc;
    doc.tau = 3;
    doc.law = make_law({
        {"l0", 1, 1, 2, 4, 4, 0.5},
        {"l0", 0, 1, 2, 4, 4, 0.5},
    });
    return doc;
}

LawDocument world_uniform_censoring() {
    std::vector<FullAtom> atoms;
    for (Tick t : {2, 3}) {
        for (Tick c : {1, 4}) atoms.push_back({"l0", 1, t, t, c, c, 0.25});
    }
    LawDocument doc;
    doc.tau = 3;
    doc.law = make_law(std::move(atoms));
    return doc;
}

LawDocument world_all_ties() {
    LawDocument doc;
    doc.tau = 2;
    doc.law = make_law({{"l0", 1, 2, 2, 2, 2, 1.0}});
    return doc;
}

}  // namespace causalsurv
