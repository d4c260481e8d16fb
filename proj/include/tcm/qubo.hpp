// Copyright 2026 The tcm-qubo Authors
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "tcm/errors.hpp"

namespace tcm {

using Index = Eigen::Index;

/// One binary decision per variable; element i is x_i in {0, 1}.
using BitVector = Eigen::Matrix<std::uint8_t, Eigen::Dynamic, 1>;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Strictly upper-triangular pairwise coefficients, row-major so that row i
/// lists the partners j > i of variable i.
template <typename Scalar>
using UpperCouplings = Eigen::SparseMatrix<Scalar, Eigen::RowMajor>;

inline bool lexicographically_less(const BitVector& a, const BitVector& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

template <typename Scalar>
struct Sample {
    BitVector assignment;
    Scalar energy{};
};

/// Quadratic unconstrained binary model
///
///     E(x) = offset + sum_i linear_i x_i + sum_{i<j} quadratic_ij x_i x_j
///
/// Immutable once constructed. Couplings are stored sparsely in the strict
/// upper triangle; exact zeros are pruned.
template <typename Scalar>
class QuboModel {
 public:
    using scalar_type = Scalar;
    using Triplet = Eigen::Triplet<Scalar>;

    QuboModel() = default;

    /// Model with `n` variables and no coefficients.
    explicit QuboModel(Index n, Scalar offset = Scalar(0))
            : linear_(Vector<Scalar>::Zero(n)), quadratic_(n, n), offset_(offset) {
        check_finite(offset_, "offset");
    }

    /// Couplings given as (i, j, value) entries with i < j. Each pair may
    /// appear at most once; entry order does not matter.
    QuboModel(Vector<Scalar> linear, const std::vector<Triplet>& quadratic, Scalar offset)
            : linear_(std::move(linear)), quadratic_(linear_.size(), linear_.size()), offset_(offset) {
        const Index n = linear_.size();
        for (const auto& t : quadratic) {
            if (t.row() < 0 || t.col() >= n || t.row() >= n) {
                throw ValidationError("quadratic index out of range: (" + std::to_string(t.row()) + "," +
                                      std::to_string(t.col()) + ") for n=" + std::to_string(n));
            }
            if (t.row() >= t.col()) {
                throw ValidationError("quadratic key must satisfy i < j: (" + std::to_string(t.row()) +
                                      "," + std::to_string(t.col()) + ")");
            }
        }
        bool duplicate = false;
        quadratic_.setFromTriplets(quadratic.begin(), quadratic.end(), [&duplicate](const Scalar& a, const Scalar& b) {
            duplicate = true;
            return a + b;
        });
        if (duplicate) throw ValidationError("duplicate quadratic key");
        finish();
    }

    /// Couplings supplied as an upper-triangular sparse matrix.
    QuboModel(Vector<Scalar> linear, UpperCouplings<Scalar> quadratic, Scalar offset)
            : linear_(std::move(linear)), quadratic_(std::move(quadratic)), offset_(offset) {
        if (quadratic_.rows() != linear_.size() || quadratic_.cols() != linear_.size()) {
            throw DimensionError("coupling matrix must be " + std::to_string(linear_.size()) + "x" +
                                 std::to_string(linear_.size()));
        }
        for (Index i = 0; i < quadratic_.outerSize(); ++i) {
            for (typename UpperCouplings<Scalar>::InnerIterator it(quadratic_, i); it; ++it) {
                if (it.col() <= it.row() && it.value() != Scalar(0)) {
                    throw ValidationError("coupling matrix must be strictly upper triangular");
                }
            }
        }
        finish();
    }

    Index num_variables() const noexcept { return linear_.size(); }
    Index num_interactions() const noexcept { return quadratic_.nonZeros(); }

    const Vector<Scalar>& linear() const noexcept { return linear_; }
    Scalar linear(Index i) const { return linear_(i); }

    const UpperCouplings<Scalar>& quadratic() const noexcept { return quadratic_; }

    /// Coefficient of x_i x_j; argument order is irrelevant, zero when absent.
    Scalar quadratic(Index i, Index j) const {
        if (i == j) return Scalar(0);
        if (i > j) std::swap(i, j);
        return quadratic_.coeff(i, j);
    }

    Scalar offset() const noexcept { return offset_; }

    /// Full symmetric coupling matrix (both triangles) for neighbour walks.
    UpperCouplings<Scalar> symmetric_couplings() const {
        UpperCouplings<Scalar> sym = quadratic_;
        UpperCouplings<Scalar> lower = quadratic_.transpose();
        sym += lower;
        sym.makeCompressed();
        return sym;
    }

 private:
    static void check_finite(Scalar v, const char* what) {
        if (!std::isfinite(static_cast<double>(v))) throw ValidationError(std::string("non-finite ") + what);
    }

    void finish() {
        check_finite(offset_, "offset");
        for (Index i = 0; i < linear_.size(); ++i) check_finite(linear_(i), "linear coefficient");
        quadratic_.prune(Scalar(0));
        quadratic_.makeCompressed();
        for (Index k = 0; k < quadratic_.nonZeros(); ++k) check_finite(quadratic_.valuePtr()[k], "quadratic coefficient");
    }

    Vector<Scalar> linear_;
    UpperCouplings<Scalar> quadratic_;
    Scalar offset_{0};
};

using Qubo = QuboModel<double>;

/// Energy of `x` under `model`, offset included.
template <typename Scalar>
Scalar evaluate(const QuboModel<Scalar>& model, const BitVector& x) {
    if (x.size() != model.num_variables()) {
        throw DimensionError("assignment has " + std::to_string(x.size()) + " bits, model has " +
                             std::to_string(model.num_variables()) + " variables");
    }
    const Vector<Scalar> xs = x.template cast<Scalar>();
    return model.offset() + model.linear().dot(xs) + xs.dot(model.quadratic() * xs);
}

/// Default variable cap for exhaustive enumeration.
inline constexpr Index kExactSolveCap = 24;

/// Global minimum by exhaustive Gray-code enumeration. Energies within a
/// relative 1e-12 of each other count as tied; ties go to the
/// lexicographically smallest bit sequence.
template <typename Scalar>
Sample<Scalar> exact_solve(const QuboModel<Scalar>& model, Index cap = kExactSolveCap) {
    const Index n = model.num_variables();
    if (n > cap) {
        throw CapacityError("exact_solve supports at most " + std::to_string(cap) + " variables, model has " +
                            std::to_string(n));
    }
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> couplings = model.symmetric_couplings();

    // Window inside which incremental energies are re-checked exactly.
    Scalar scale = std::abs(model.offset()) + model.linear().cwiseAbs().sum() + couplings.cwiseAbs().sum();
    const Scalar window = Scalar(1e-9) * (Scalar(1) + scale);

    auto tied = [](Scalar a, Scalar b) {
        return std::abs(a - b) <= Scalar(1e-12) * std::max<Scalar>(Scalar(1), std::max(std::abs(a), std::abs(b)));
    };

    BitVector x = BitVector::Zero(n);
    Vector<Scalar> field = model.linear();
    Scalar energy = model.offset();

    Sample<Scalar> best{x, evaluate(model, x)};
    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t step = 1; step < total; ++step) {
        const int i = __builtin_ctzll(step);
        if (x(i)) {
            energy -= field(i);
            x(i) = 0;
            field -= couplings.col(i);
        } else {
            energy += field(i);
            x(i) = 1;
            field += couplings.col(i);
        }
        if (energy > best.energy + window) continue;
        const Scalar exact = evaluate(model, x);
        if (tied(exact, best.energy)) {
            if (lexicographically_less(x, best.assignment)) best = {x, std::min(exact, best.energy)};
        } else if (exact < best.energy) {
            best = {x, exact};
        }
    }
    best.energy = evaluate(model, best.assignment);
    return best;
}

struct QuboGraph {
    Index node_count = 0;
    std::vector<std::pair<Index, Index>> edges;  // (i, j) with i < j, row-major order
};

/// One node per variable, one edge per nonzero coupling.
template <typename Scalar>
QuboGraph to_graph(const QuboModel<Scalar>& model) {
    QuboGraph graph{model.num_variables(), {}};
    graph.edges.reserve(static_cast<std::size_t>(model.num_interactions()));
    const auto& q = model.quadratic();
    for (Index i = 0; i < q.outerSize(); ++i) {
        for (typename UpperCouplings<Scalar>::InnerIterator it(q, i); it; ++it) {
            if (it.value() != Scalar(0)) graph.edges.emplace_back(it.row(), it.col());
        }
    }
    return graph;
}

}  // namespace tcm
