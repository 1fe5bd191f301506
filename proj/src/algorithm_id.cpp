#include "macsim/algorithm_id.hpp"

namespace macsim {

std::string to_string(AlgorithmId id) {
    switch (id) {
        case AlgorithmId::Rrw: return "rrw";
        case AlgorithmId::OfRrw: return "of-rrw";
        case AlgorithmId::Srr: return "srr";
        case AlgorithmId::OfSrr: return "of-srr";
        case AlgorithmId::Mbtf: return "mbtf";
        case AlgorithmId::Jrrw: return "jrrw";
        case AlgorithmId::OfJrrw: return "of-jrrw";
        case AlgorithmId::Crrw: return "c-rrw";
        case AlgorithmId::OfcRrw: return "ofc-rrw";
    }
    return "?";
}

std::optional<AlgorithmId> parse_algorithm(const std::string& text) {
    if (text == "rrw") return AlgorithmId::Rrw;
    if (text == "of-rrw") return AlgorithmId::OfRrw;
    if (text == "srr") return AlgorithmId::Srr;
    if (text == "of-srr") return AlgorithmId::OfSrr;
    if (text == "mbtf") return AlgorithmId::Mbtf;
    if (text == "jrrw") return AlgorithmId::Jrrw;
    if (text == "of-jrrw") return AlgorithmId::OfJrrw;
    if (text == "c-rrw") return AlgorithmId::Crrw;
    if (text == "ofc-rrw") return AlgorithmId::OfcRrw;
    return std::nullopt;
}

bool requires_collision_detection(AlgorithmId id) {
    return id == AlgorithmId::Srr || id == AlgorithmId::OfSrr;
}

bool forbids_jamming(AlgorithmId id) {
    switch (id) {
        case AlgorithmId::Rrw:
        case AlgorithmId::OfRrw:
        case AlgorithmId::Srr:
        case AlgorithmId::OfSrr:
            return true;
        default:
            return false;
    }
}

bool is_jrrw_family(AlgorithmId id) {
    return id == AlgorithmId::Jrrw || id == AlgorithmId::OfJrrw;
}

bool is_phase_algorithm(AlgorithmId id) { return id != AlgorithmId::Mbtf; }

bool is_older_first(AlgorithmId id) {
    switch (id) {
        case AlgorithmId::OfRrw:
        case AlgorithmId::OfSrr:
        case AlgorithmId::OfJrrw:
        case AlgorithmId::OfcRrw:
            return true;
        default:
            return false;
    }
}

bool is_adaptive(AlgorithmId id) {
    switch (id) {
        case AlgorithmId::Mbtf:
        case AlgorithmId::Crrw:
        case AlgorithmId::OfcRrw:
            return true;
        default:
            return false;
    }
}

}  // namespace macsim
