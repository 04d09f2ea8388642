#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <variant>
#include <vector>

#include "topsim/error.hpp"
#include "topsim/fuzzy.hpp"

namespace topsim {

enum class Direction { benefit, cost };
enum class DataKind { crisp, linguistic, fuzzy };

/// One ranking criterion: named, benefit- or cost-typed, with a linguistic
/// importance weight and the kind of data its column holds.
struct Criterion {
    std::string name;
    Direction direction{Direction::benefit};
    LinguisticRank weight{LinguisticRank::medium};
    DataKind data_kind{DataKind::crisp};
};

/// A matrix cell: crisp number, linguistic level, or triangular fuzzy number.
using Cell = std::variant<double, LinguisticRank, Tfn>;

/// Immutable alternatives x criteria decision matrix. Cells are stored
/// row-major; each cell's payload must match its criterion's data kind.
class DecisionMatrix {
public:
    DecisionMatrix(std::vector<std::string> alternatives, std::vector<Criterion> criteria,
                   std::vector<Cell> cells)
        : alternatives_(std::move(alternatives)),
          criteria_(std::move(criteria)),
          cells_(std::move(cells)) {
        validate();
    }

    std::size_t alternative_count() const noexcept { return alternatives_.size(); }
    std::size_t criterion_count() const noexcept { return criteria_.size(); }

    const std::vector<std::string>& alternatives() const noexcept { return alternatives_; }
    const std::vector<Criterion>& criteria() const noexcept { return criteria_; }

    const Cell& at(std::size_t alt, std::size_t crit) const {
        return cells_.at(alt * criteria_.size() + crit);
    }

private:
    void validate() const {
        if (alternatives_.empty()) {
            throw std::invalid_argument("DecisionMatrix: needs at least one alternative");
        }
        if (criteria_.empty()) {
            throw std::invalid_argument("DecisionMatrix: needs at least one criterion");
        }
        if (cells_.size() != alternatives_.size() * criteria_.size()) {
            throw std::invalid_argument("DecisionMatrix: cell grid is not rectangular m x n");
        }
        std::unordered_set<std::string> names;
        for (const auto& crit : criteria_) {
            if (!names.insert(crit.name).second) {
                throw std::invalid_argument("DecisionMatrix: duplicate criterion '" + crit.name +
                                            "'");
            }
        }
        std::unordered_set<std::string> ids;
        for (const auto& alt : alternatives_) {
            if (!ids.insert(alt).second) {
                throw std::invalid_argument("DecisionMatrix: duplicate alternative '" + alt + "'");
            }
        }
        for (std::size_t i = 0; i < alternatives_.size(); ++i) {
            for (std::size_t j = 0; j < criteria_.size(); ++j) {
                check_cell(i, j);
            }
        }
    }

    void check_cell(std::size_t i, std::size_t j) const {
        const Cell& cell = cells_[i * criteria_.size() + j];
        const Criterion& crit = criteria_[j];
        const auto fail = [&](const char* msg) {
            throw std::invalid_argument("DecisionMatrix: cell (" + alternatives_[i] + ", " +
                                        crit.name + "): " + msg);
        };
        switch (crit.data_kind) {
            case DataKind::crisp: {
                const double* v = std::get_if<double>(&cell);
                if (v == nullptr) fail("expected a crisp value");
                if (!std::isfinite(*v)) fail("crisp value must be finite");
                if (*v < 0.0) fail("crisp value must be nonnegative");
                break;
            }
            case DataKind::linguistic:
                if (!std::holds_alternative<LinguisticRank>(cell)) fail("expected a linguistic value");
                break;
            case DataKind::fuzzy: {
                const Tfn* t = std::get_if<Tfn>(&cell);
                if (t == nullptr) fail("expected a fuzzy value");
                if (t->a < 0.0) fail("fuzzy value must be nonnegative");
                break;
            }
        }
    }

    std::vector<std::string> alternatives_;
    std::vector<Criterion> criteria_;
    std::vector<Cell> cells_;
};

/// Relative-closeness scores (input order) and the induced total order.
struct RankingResult {
    std::vector<double> scores;        ///< RC per alternative, in declaration order
    std::vector<std::string> order;    ///< alternative ids by descending RC, stable ties
    bool degenerate{false};            ///< all alternatives identical
};

/// Dense row-major numeric grid used by the crisp pipeline.
struct CrispGrid {
    std::size_t rows{0};
    std::size_t cols{0};
    std::vector<double> cells;

    double at(std::size_t i, std::size_t j) const { return cells[i * cols + j]; }
    double& at(std::size_t i, std::size_t j) { return cells[i * cols + j]; }
};

/// Dense row-major TFN grid used by the fuzzy pipeline.
struct FuzzyGrid {
    std::size_t rows{0};
    std::size_t cols{0};
    std::vector<Tfn> cells;

    const Tfn& at(std::size_t i, std::size_t j) const { return cells[i * cols + j]; }
    Tfn& at(std::size_t i, std::size_t j) { return cells[i * cols + j]; }
};

/// Per-criterion positive and negative ideals.
struct CrispIdeals {
    std::vector<double> positive;
    std::vector<double> negative;
};

struct FuzzyIdeals {
    std::vector<Tfn> positive;
    std::vector<Tfn> negative;
};

/// Per-alternative separation from the positive and negative ideals.
struct Separations {
    std::vector<double> to_positive;
    std::vector<double> to_negative;
};

/// Collapses every cell to a crisp number: linguistic levels through the
/// 1..9 scale, fuzzy cells to their modal value.
inline CrispGrid resolve_crisp_cells(const DecisionMatrix& matrix) {
    const std::size_t m = matrix.alternative_count();
    const std::size_t n = matrix.criterion_count();
    CrispGrid grid{m, n, std::vector<double>(m * n, 0.0)};
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const Cell& cell = matrix.at(i, j);
            if (const double* v = std::get_if<double>(&cell)) {
                grid.at(i, j) = *v;
            } else if (const LinguisticRank* r = std::get_if<LinguisticRank>(&cell)) {
                grid.at(i, j) = crisp_from_linguistic(*r);
            } else {
                grid.at(i, j) = std::get<Tfn>(cell).b;
            }
        }
    }
    return grid;
}

/// Lifts every cell to a TFN: crisp values become degenerate TFNs,
/// linguistic levels decode through the membership table.
inline FuzzyGrid resolve_fuzzy_cells(const DecisionMatrix& matrix) {
    const std::size_t m = matrix.alternative_count();
    const std::size_t n = matrix.criterion_count();
    FuzzyGrid grid{m, n, std::vector<Tfn>(m * n)};
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const Cell& cell = matrix.at(i, j);
            if (const double* v = std::get_if<double>(&cell)) {
                grid.at(i, j) = tfn_from_crisp(*v);
            } else if (const LinguisticRank* r = std::get_if<LinguisticRank>(&cell)) {
                grid.at(i, j) = tfn_from_linguistic(*r);
            } else {
                grid.at(i, j) = std::get<Tfn>(cell);
            }
        }
    }
    return grid;
}

/// Vector normalization: r_ij = x_ij / sqrt(sum_i x_ij^2). Every output
/// column has unit Euclidean norm. An all-zero column has no direction and
/// is reported as degenerate.
inline CrispGrid normalize_crisp(const DecisionMatrix& matrix) {
    CrispGrid grid = resolve_crisp_cells(matrix);
    for (std::size_t j = 0; j < grid.cols; ++j) {
        double sum_sq = 0.0;
        for (std::size_t i = 0; i < grid.rows; ++i) {
            sum_sq += grid.at(i, j) * grid.at(i, j);
        }
        if (sum_sq <= 0.0) {
            throw DegenerateColumnError(matrix.criteria()[j].name);
        }
        const double norm = std::sqrt(sum_sq);
        for (std::size_t i = 0; i < grid.rows; ++i) {
            grid.at(i, j) /= norm;
        }
    }
    return grid;
}

/// Crisp criterion weights: linguistic weights through the 1..9 scale,
/// scaled to sum to one.
inline std::vector<double> resolve_weights_crisp(std::span<const Criterion> criteria) {
    if (criteria.empty()) {
        throw std::invalid_argument("resolve_weights_crisp: empty criteria");
    }
    std::vector<double> weights;
    weights.reserve(criteria.size());
    double total = 0.0;
    for (const auto& crit : criteria) {
        const double w = crisp_from_linguistic(crit.weight);
        weights.push_back(w);
        total += w;
    }
    for (double& w : weights) {
        w /= total;
    }
    return weights;
}

inline CrispGrid weighted_matrix_crisp(const CrispGrid& normalized,
                                       std::span<const double> weights) {
    if (weights.size() != normalized.cols) {
        throw std::invalid_argument("weighted_matrix_crisp: weight count mismatch");
    }
    CrispGrid out = normalized;
    for (std::size_t i = 0; i < out.rows; ++i) {
        for (std::size_t j = 0; j < out.cols; ++j) {
            out.at(i, j) *= weights[j];
        }
    }
    return out;
}

/// Positive ideal takes the column max on benefit criteria and the min on
/// cost criteria; the negative ideal is the reverse.
inline CrispIdeals ideal_solutions_crisp(const CrispGrid& weighted,
                                         std::span<const Criterion> criteria) {
    if (criteria.size() != weighted.cols) {
        throw std::invalid_argument("ideal_solutions_crisp: criteria count mismatch");
    }
    CrispIdeals ideals;
    ideals.positive.resize(weighted.cols);
    ideals.negative.resize(weighted.cols);
    for (std::size_t j = 0; j < weighted.cols; ++j) {
        double lo = weighted.at(0, j);
        double hi = lo;
        for (std::size_t i = 1; i < weighted.rows; ++i) {
            lo = std::min(lo, weighted.at(i, j));
            hi = std::max(hi, weighted.at(i, j));
        }
        if (criteria[j].direction == Direction::benefit) {
            ideals.positive[j] = hi;
            ideals.negative[j] = lo;
        } else {
            ideals.positive[j] = lo;
            ideals.negative[j] = hi;
        }
    }
    return ideals;
}

/// Euclidean separation of each alternative from both ideals.
inline Separations separations_crisp(const CrispGrid& weighted, const CrispIdeals& ideals) {
    if (ideals.positive.size() != weighted.cols || ideals.negative.size() != weighted.cols) {
        throw std::invalid_argument("separations_crisp: ideal size mismatch");
    }
    Separations sep;
    sep.to_positive.resize(weighted.rows);
    sep.to_negative.resize(weighted.rows);
    for (std::size_t i = 0; i < weighted.rows; ++i) {
        double dp = 0.0;
        double dn = 0.0;
        for (std::size_t j = 0; j < weighted.cols; ++j) {
            const double p = weighted.at(i, j) - ideals.positive[j];
            const double q = weighted.at(i, j) - ideals.negative[j];
            dp += p * p;
            dn += q * q;
        }
        sep.to_positive[i] = std::sqrt(dp);
        sep.to_negative[i] = std::sqrt(dn);
    }
    return sep;
}

/// RC = d- / (d+ + d-). Both separations zero means every alternative is
/// identical; the symmetric value 0.5 is returned for that case.
inline double relative_closeness(double d_plus, double d_minus) {
    if (d_plus < 0.0 || d_minus < 0.0) {
        throw std::invalid_argument("relative_closeness: separations must be nonnegative");
    }
    const double total = d_plus + d_minus;
    if (total <= 0.0) {
        return 0.5;
    }
    return d_minus / total;
}

namespace detail {

inline RankingResult make_ranking(const std::vector<std::string>& alternatives,
                                  const Separations& sep) {
    RankingResult result;
    result.scores.resize(alternatives.size());
    for (std::size_t i = 0; i < alternatives.size(); ++i) {
        const bool zero = sep.to_positive[i] + sep.to_negative[i] <= 0.0;
        result.scores[i] = relative_closeness(sep.to_positive[i], sep.to_negative[i]);
        if (zero) {
            // Both separations vanish only when all rows coincide.
            result.degenerate = true;
        }
    }
    std::vector<std::size_t> idx(alternatives.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t lhs, std::size_t rhs) {
        return result.scores[lhs] > result.scores[rhs];
    });
    result.order.reserve(alternatives.size());
    for (std::size_t i : idx) {
        result.order.push_back(alternatives[i]);
    }
    return result;
}

}  // namespace detail

/// Crisp TOPSIS over the full matrix: normalize, weight, pick ideals,
/// measure separations, score by relative closeness.
inline RankingResult rank_crisp(const DecisionMatrix& matrix) {
    const CrispGrid normalized = normalize_crisp(matrix);
    const std::vector<double> weights = resolve_weights_crisp(matrix.criteria());
    const CrispGrid weighted = weighted_matrix_crisp(normalized, weights);
    const CrispIdeals ideals = ideal_solutions_crisp(weighted, matrix.criteria());
    const Separations sep = separations_crisp(weighted, ideals);
    return detail::make_ranking(matrix.alternatives(), sep);
}

/// Fuzzy normalization. Benefit columns divide all components by the
/// column's largest upper support; cost columns map through the smallest
/// lower support, which also folds the direction into the result. A
/// benefit column that is entirely zero carries no preference and
/// normalizes to zeros; a zero in a cost column cannot be inverted and is
/// reported as degenerate.
inline FuzzyGrid normalize_fuzzy(const FuzzyGrid& resolved, std::span<const Criterion> criteria) {
    if (criteria.size() != resolved.cols) {
        throw std::invalid_argument("normalize_fuzzy: criteria count mismatch");
    }
    FuzzyGrid out = resolved;
    for (std::size_t j = 0; j < resolved.cols; ++j) {
        if (criteria[j].direction == Direction::benefit) {
            double c_plus = 0.0;
            for (std::size_t i = 0; i < resolved.rows; ++i) {
                c_plus = std::max(c_plus, resolved.at(i, j).c);
            }
            if (c_plus <= 0.0) {
                // Entire column is (0,0,0): all alternatives agree, nothing
                // to scale.
                continue;
            }
            for (std::size_t i = 0; i < resolved.rows; ++i) {
                const Tfn& x = resolved.at(i, j);
                out.at(i, j) = Tfn{x.a / c_plus, x.b / c_plus, x.c / c_plus};
            }
        } else {
            double a_minus = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < resolved.rows; ++i) {
                a_minus = std::min(a_minus, resolved.at(i, j).a);
            }
            for (std::size_t i = 0; i < resolved.rows; ++i) {
                const Tfn& x = resolved.at(i, j);
                if (x.a <= 0.0) {
                    throw DegenerateColumnError(criteria[j].name);
                }
                out.at(i, j) = Tfn{a_minus / x.c, a_minus / x.b, a_minus / x.a};
            }
        }
    }
    return out;
}

/// Fuzzy criterion weights: the linguistic membership TFN rescaled from the
/// 0-100 axis into [0, 1].
inline std::vector<Tfn> resolve_weights_fuzzy(std::span<const Criterion> criteria) {
    std::vector<Tfn> weights;
    weights.reserve(criteria.size());
    for (const auto& crit : criteria) {
        const Tfn t = tfn_from_linguistic(crit.weight);
        weights.push_back(Tfn{t.a / 100.0, t.b / 100.0, t.c / 100.0});
    }
    return weights;
}

inline FuzzyGrid weighted_matrix_fuzzy(const FuzzyGrid& normalized, std::span<const Tfn> weights) {
    if (weights.size() != normalized.cols) {
        throw std::invalid_argument("weighted_matrix_fuzzy: weight count mismatch");
    }
    FuzzyGrid out = normalized;
    for (std::size_t i = 0; i < out.rows; ++i) {
        for (std::size_t j = 0; j < out.cols; ++j) {
            out.at(i, j) = weights[j] * out.at(i, j);
        }
    }
    return out;
}

/// Component-wise envelopes over the alternatives. Direction handling
/// already happened during normalization, so the positive ideal is the max
/// on every column.
inline FuzzyIdeals ideal_solutions_fuzzy(const FuzzyGrid& weighted) {
    FuzzyIdeals ideals;
    ideals.positive.resize(weighted.cols);
    ideals.negative.resize(weighted.cols);
    for (std::size_t j = 0; j < weighted.cols; ++j) {
        Tfn lo = weighted.at(0, j);
        Tfn hi = lo;
        for (std::size_t i = 1; i < weighted.rows; ++i) {
            const Tfn& x = weighted.at(i, j);
            lo = Tfn{std::min(lo.a, x.a), std::min(lo.b, x.b), std::min(lo.c, x.c)};
            hi = Tfn{std::max(hi.a, x.a), std::max(hi.b, x.b), std::max(hi.c, x.c)};
        }
        ideals.positive[j] = hi;
        ideals.negative[j] = lo;
    }
    return ideals;
}

/// Separation as the sum of per-criterion vertex distances to each ideal.
inline Separations separations_fuzzy(const FuzzyGrid& weighted, const FuzzyIdeals& ideals) {
    if (ideals.positive.size() != weighted.cols || ideals.negative.size() != weighted.cols) {
        throw std::invalid_argument("separations_fuzzy: ideal size mismatch");
    }
    Separations sep;
    sep.to_positive.resize(weighted.rows);
    sep.to_negative.resize(weighted.rows);
    for (std::size_t i = 0; i < weighted.rows; ++i) {
        double dp = 0.0;
        double dn = 0.0;
        for (std::size_t j = 0; j < weighted.cols; ++j) {
            dp += vertex_distance(weighted.at(i, j), ideals.positive[j]);
            dn += vertex_distance(weighted.at(i, j), ideals.negative[j]);
        }
        sep.to_positive[i] = dp;
        sep.to_negative[i] = dn;
    }
    return sep;
}

/// Fuzzy TOPSIS over the full matrix: lift cells to TFNs, normalize,
/// weight, take component-wise ideal envelopes, sum vertex distances,
/// score by relative closeness.
inline RankingResult rank_fuzzy(const DecisionMatrix& matrix) {
    const FuzzyGrid resolved = resolve_fuzzy_cells(matrix);
    const FuzzyGrid normalized = normalize_fuzzy(resolved, matrix.criteria());
    const std::vector<Tfn> weights = resolve_weights_fuzzy(matrix.criteria());
    const FuzzyGrid weighted = weighted_matrix_fuzzy(normalized, weights);
    const FuzzyIdeals ideals = ideal_solutions_fuzzy(weighted);
    const Separations sep = separations_fuzzy(weighted, ideals);
    return detail::make_ranking(matrix.alternatives(), sep);
}

}  // namespace topsim
