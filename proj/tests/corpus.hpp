#pragma once

#include <string>
#include <vector>

// Sample families of the eleven local degenerations, as bundled in data/scenarios.
inline const std::vector<std::string>& local_corpus() {
    static const std::vector<std::string> eqs{
        "xy(x+y+w)",           "xyz(x+y+z+w)",       "xy(x+y)z(x+wy+z)",  "xy(x+y)z(x+z+w)",
        "xy(x+y)z(x+2y+z+w)",  "xyz(x+y+z)(x+y+w)",  "xy(x+y+w)z",        "xy(x+y+zw)z",
        "xyz(x+y+z)(x-y+w)",   "xyz(x+y+wz)(x+wy+z)", "xyz(x+y+wz)(x+2y+z)"};
    return eqs;
}

inline const std::vector<std::string>& scenario_ids() {
    static const std::vector<std::string> ids{"A1", "A2", "A3", "A4", "A5", "A6", "A7", "A8", "A9", "A10", "A11"};
    return ids;
}
