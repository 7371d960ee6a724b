#pragma once

#include <stdexcept>
#include <string>

namespace qderange {

// Coxeter family of the derangement statistic: A (maj over derangements) or
// B (fmaj over signed derangements).
enum class Family { A, B };

inline const char* family_name(Family f) { return f == Family::A ? "A" : "B"; }

inline Family family_from_string(const std::string& s) {
    if (s == "A" || s == "a") return Family::A;
    if (s == "B" || s == "b") return Family::B;
    throw std::invalid_argument("family must be A or B, got \"" + s + "\"");
}

}  // namespace qderange
