#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace topsim {

/// Triangular fuzzy number (a, b, c) with a <= b <= c.
///
/// A degenerate instance (a == b == c) represents a crisp value exactly,
/// which lets deterministic telemetry flow through the fuzzy pipeline
/// unchanged.
struct Tfn {
    double a{0.0};  ///< lower support
    double b{0.0};  ///< modal value
    double c{0.0};  ///< upper support

    constexpr Tfn() = default;

    Tfn(double lower, double modal, double upper) : a(lower), b(modal), c(upper) {
        if (!(std::isfinite(a) && std::isfinite(b) && std::isfinite(c))) {
            throw std::invalid_argument("Tfn: components must be finite");
        }
        if (!(a <= b && b <= c)) {
            throw std::invalid_argument("Tfn: requires a <= b <= c");
        }
    }

    bool operator==(const Tfn& other) const = default;
};

/// Seven-level linguistic scale, totally ordered very_low < ... < very_high.
enum class LinguisticRank {
    very_low = 0,
    low,
    mol_low,  // "more or less" low
    medium,
    mol_high,
    high,
    very_high,
};

inline constexpr std::size_t kLinguisticLevels = 7;

namespace detail {

// Fuzzy membership rows as (modal, left spread, right spread); decoded
// below as (m - l, m, m + r) so every row is a valid TFN on [0, 100].
inline constexpr std::array<std::array<double, 3>, kLinguisticLevels> kMembershipTable{{
    {30.0, 0.0, 10.0},   // VL
    {40.0, 10.0, 10.0},  // L
    {50.0, 10.0, 10.0},  // ML
    {60.0, 10.0, 10.0},  // M
    {70.0, 10.0, 10.0},  // MH
    {80.0, 10.0, 10.0},  // H
    {90.0, 10.0, 0.0},   // VH
}};

inline constexpr std::array<double, kLinguisticLevels> kCrispTable{1.0, 3.0, 4.0, 5.0, 6.0, 7.0, 9.0};

inline constexpr std::array<std::string_view, kLinguisticLevels> kRankAbbrev{"VL", "L", "ML",
                                                                             "M", "MH", "H", "VH"};

inline std::size_t rank_index(LinguisticRank rank) {
    const auto idx = static_cast<std::size_t>(rank);
    if (idx >= kLinguisticLevels) {
        throw std::invalid_argument("LinguisticRank: out of range");
    }
    return idx;
}

}  // namespace detail

/// Decodes the linguistic level into its triangular membership function
/// on the 0-100 axis.
inline Tfn tfn_from_linguistic(LinguisticRank rank) {
    const auto& row = detail::kMembershipTable[detail::rank_index(rank)];
    return Tfn{row[0] - row[1], row[0], row[0] + row[2]};
}

/// Maps the linguistic level onto the 1..9 crisp scale (VL=1 ... VH=9).
inline double crisp_from_linguistic(LinguisticRank rank) {
    return detail::kCrispTable[detail::rank_index(rank)];
}

/// Embeds a crisp value as a degenerate TFN (x, x, x).
inline Tfn tfn_from_crisp(double x) {
    if (!std::isfinite(x)) {
        throw std::invalid_argument("tfn_from_crisp: value must be finite");
    }
    return Tfn{x, x, x};
}

/// Component-wise product, the standard triangular approximation for
/// nonnegative operands. Operands with negative lower support are rejected.
inline Tfn operator*(const Tfn& x, const Tfn& y) {
    if (x.a < 0.0 || y.a < 0.0) {
        throw std::invalid_argument("Tfn multiply: operands must be nonnegative");
    }
    return Tfn{x.a * y.a, x.b * y.b, x.c * y.c};
}

/// Vertex distance between two TFNs: the Euclidean distance of their
/// (a, b, c) coordinates.
inline double vertex_distance(const Tfn& x, const Tfn& y) {
    const double da = x.a - y.a;
    const double db = x.b - y.b;
    const double dc = x.c - y.c;
    return std::sqrt(da * da + db * db + dc * dc);
}

inline std::string_view to_string(LinguisticRank rank) {
    return detail::kRankAbbrev[detail::rank_index(rank)];
}

/// Parses "VL", "L", "ML", "M", "MH", "H", "VH" (case-sensitive).
inline LinguisticRank linguistic_rank_from_string(std::string_view text) {
    for (std::size_t i = 0; i < kLinguisticLevels; ++i) {
        if (detail::kRankAbbrev[i] == text) {
            return static_cast<LinguisticRank>(i);
        }
    }
    throw std::invalid_argument("unknown linguistic rank: " + std::string(text));
}

}  // namespace topsim
