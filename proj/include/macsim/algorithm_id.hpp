#pragma once

#include <optional>
#include <string>

namespace macsim {

enum class AlgorithmId {
    Rrw,     // round-robin withholding
    OfRrw,   // older-first round-robin withholding
    Srr,     // search round-robin (collision detection)
    OfSrr,   // older-first search round-robin
    Mbtf,    // move-big-to-front
    Jrrw,    // jamming round-robin withholding, parameter J
    OfJrrw,  // older-first jamming round-robin withholding
    Crrw,    // control-round round-robin withholding
    OfcRrw,  // older-first control-round round-robin withholding
};

std::string to_string(AlgorithmId id);
std::optional<AlgorithmId> parse_algorithm(const std::string& text);

bool requires_collision_detection(AlgorithmId id);  // srr family
bool forbids_jamming(AlgorithmId id);               // rrw + srr families
bool is_jrrw_family(AlgorithmId id);                // needs parameter J
bool is_phase_algorithm(AlgorithmId id);            // all except mbtf
bool is_older_first(AlgorithmId id);
bool is_adaptive(AlgorithmId id);                   // may send control-only messages

}  // namespace macsim
