#pragma once

// Hand-stepped reference executions (n <= 4, short horizons). Each case
// was stepped on paper from the round event order: a) transmit-or-pause
// from the pre-round state, b) common feedback, c) injections (ids
// global, ordered by station then emission), d) transitions, with
// older-first graduation in step d of a phase's last round. The
// expected traces freeze the canonical serialization byte for byte.

#include <string>
#include <vector>

namespace macsim::oracles {

struct OracleCase {
    const char* name;
    const char* algorithm;
    int n;
    int J;  // -1 when not applicable
    bool jamming;
    bool collision_detection;
    const char* rho;
    const char* lambda;
    long long b;
    const char* script;
    long long horizon;
    const char* expected;  // canonical trace
};

inline const std::vector<OracleCase>& cases() {
    static const std::vector<OracleCase> kCases = {
        {"rrw-unload-two", "rrw", 3, -1, false, false, "0", "0", 2,
         "inject 0 1\ninject 0 1\n", 8,
         "0;;0;S;1:0,1:1\n"
         "1;1:0;0;H:0;\n"
         "2;1:1;0;H:1;\n"
         "3;;0;S;\n"
         "4;;0;S;\n"
         "5;;0;S;\n"
         "6;;0;S;\n"
         "7;;0;S;\n"},

        {"rrw-single-packet", "rrw", 2, -1, false, false, "0", "0", 1,
         "inject 0 1\n", 5,
         "0;;0;S;1:0\n"
         "1;1:0;0;H:0;\n"
         "2;;0;S;\n"
         "3;;0;S;\n"
         "4;;0;S;\n"},

        {"rrw-one-station-burst", "rrw", 1, -1, false, false, "0", "0", 3,
         "inject 0 0\ninject 0 0\ninject 0 0\n", 6,
         "0;;0;S;0:0,0:1,0:2\n"
         "1;0:0;0;H:0;\n"
         "2;0:1;0;H:1;\n"
         "3;0:2;0;H:2;\n"
         "4;;0;S;\n"
         "5;;0;S;\n"},

        {"of-rrw-new-packets-wait", "of-rrw", 2, -1, false, false, "1", "0", 2,
         "inject 0 0\ninject 0 0\ninject 2 0\n", 8,
         "0;;0;S;0:0,0:1\n"
         "1;;0;S;\n"
         "2;0:0;0;H:0;0:2\n"
         "3;0:1;0;H:1;\n"
         "4;;0;S;\n"
         "5;;0;S;\n"
         "6;0:2;0;H:2;\n"
         "7;;0;S;\n"},

        {"jrrw-jam-retry", "jrrw", 2, 1, true, false, "0", "1/4", 1,
         "inject 0 1\njam 2\n", 6,
         "0;;0;S;1:0\n"
         "1;;0;S;\n"
         "2;1:0;1;S;\n"
         "3;1:0;0;H:0;\n"
         "4;;0;S;\n"
         "5;;0;S;\n"},

        {"jrrw-zero-equals-rrw", "jrrw", 2, 0, false, false, "0", "0", 1,
         "inject 0 1\n", 5,
         "0;;0;S;1:0\n"
         "1;1:0;0;H:0;\n"
         "2;;0;S;\n"
         "3;;0;S;\n"
         "4;;0;S;\n"},

        {"of-jrrw-phase-and-jam", "of-jrrw", 2, 1, true, false, "1/2", "1/4", 1,
         "inject 0 1\ninject 4 1\njam 6\n", 13,
         "0;;0;S;1:0\n"
         "1;;0;S;\n"
         "2;;0;S;\n"
         "3;;0;S;\n"
         "4;;0;S;1:1\n"
         "5;;0;S;\n"
         "6;1:0;1;S;\n"
         "7;1:0;0;H:0;\n"
         "8;;0;S;\n"
         "9;;0;S;\n"
         "10;;0;S;\n"
         "11;;0;S;\n"
         "12;1:1;0;H:1;\n"},

        {"c-rrw-control-and-jam", "c-rrw", 2, -1, true, false, "1/2", "1/4", 1,
         "inject 0 0\njam 2\n", 6,
         "0;0:-;0;H:-;0:0\n"
         "1;1:-;0;H:-;\n"
         "2;0:0;1;S;\n"
         "3;0:0;0;H:0;\n"
         "4;0:-;0;H:-;\n"
         "5;1:-;0;H:-;\n"},

        {"ofc-rrw-olds-then-controls", "ofc-rrw", 2, -1, true, false, "1/2", "0", 2,
         "inject 0 0\ninject 1 0\n", 6,
         "0;0:-;0;H:-;0:0\n"
         "1;1:-;0;H:-;0:1\n"
         "2;0:0;0;H:0;\n"
         "3;0:1;0;H:1;\n"
         "4;0:-;0;H:-;\n"
         "5;1:-;0;H:-;\n"},

        {"srr-split-two-stations", "srr", 4, -1, false, true, "0", "0", 2,
         "inject 0 1\ninject 0 3\n", 7,
         "0;;0;S;1:0,3:1\n"
         "1;1:0,3:1;0;C;\n"
         "2;1:0;0;H:0;\n"
         "3;;0;S;\n"
         "4;3:1;0;H:1;\n"
         "5;;0;S;\n"
         "6;;0;S;\n"},

        {"srr-deep-split", "srr", 4, -1, false, true, "0", "0", 2,
         "inject 0 2\ninject 0 3\n", 8,
         "0;;0;S;2:0,3:1\n"
         "1;2:0,3:1;0;C;\n"
         "2;;0;S;\n"
         "3;2:0,3:1;0;C;\n"
         "4;2:0;0;H:0;\n"
         "5;;0;S;\n"
         "6;3:1;0;H:1;\n"
         "7;;0;S;\n"},

        {"of-srr-graduation", "of-srr", 2, -1, false, true, "1", "0", 2,
         "inject 0 0\ninject 0 1\ninject 2 0\n", 8,
         "0;;0;S;0:0,1:1\n"
         "1;0:0,1:1;0;C;\n"
         "2;0:0;0;H:0;0:2\n"
         "3;;0;S;\n"
         "4;1:1;0;H:1;\n"
         "5;;0;S;\n"
         "6;0:2;0;H:2;\n"
         "7;;0;S;\n"},

        {"mbtf-big-to-front", "mbtf", 3, -1, false, false, "1", "0", 3,
         "inject 0 2\ninject 0 2\ninject 0 2\n", 8,
         "0;;0;S;2:0,2:1,2:2\n"
         "1;;0;S;\n"
         "2;2:0!;0;H:0!;\n"
         "3;2:1;0;H:1;\n"
         "4;;0;S;\n"
         "5;;0;S;\n"
         "6;2:2;0;H:2;\n"
         "7;;0;S;\n"},

        {"mbtf-control-variant", "mbtf", 2, -1, true, false, "1/2", "1/4", 2,
         "inject 0 0\njam 1\ninject 3 1\n", 6,
         "0;0:-;0;H:-;0:0\n"
         "1;1:-;1;S;\n"
         "2;1:-;0;H:-;\n"
         "3;0:0;0;H:0;1:1\n"
         "4;1:1;0;H:1;\n"
         "5;0:-;0;H:-;\n"},
    };
    return kCases;
}

}  // namespace macsim::oracles
