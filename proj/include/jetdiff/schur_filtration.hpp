#pragma once

#include <string_view>
#include <utility>
#include <vector>

#include "jetdiff/invariant_jets.hpp"
#include "jetdiff/rational.hpp"

namespace jetdiff {

enum class Family { K2Dim2, K3Dim2, K3Dim3, GG };

Family parse_family(std::string_view name);
std::string_view family_name(Family f);

/// Weakly decreasing non-negative parts. Shorter lists are padded with zeros.
struct Partition {
  std::vector<unsigned> parts;
  unsigned part(std::size_t i) const { return i < parts.size() ? parts[i] : 0; }
  unsigned size() const;
  friend bool operator==(const Partition&, const Partition&) = default;
};

/// One Schur summand of a graded jet bundle.
///   K3Dim3 / K3Dim2: gamma is the filtration shift and lambda the partition.
///   K2Dim2: gamma is the canonical-twist exponent j, lambda = (m - 3j, 0).
///   GG: gamma = 0, lambda holds (l_1, ..., l_k) with Σ i·l_i = m.
struct FiltrationIndex {
  Family family;
  unsigned gamma = 0;
  Partition lambda;
  friend bool operator==(const FiltrationIndex&, const FiltrationIndex&) = default;
};

/// Ordered by gamma ascending, then lambda descending lexicographically.
/// `k` is only consulted for the GG family.
std::vector<FiltrationIndex> filtration_indices(Family family, unsigned m, unsigned k = 3);

/// Weyl dimension of Γ^λ of a rank-r bundle, r ∈ {2, 3}. BadPartition when λ
/// is not a partition with at most r parts.
Integer schur_dim(const Partition& lambda, unsigned r);

/// Σ over the filtration of the summand ranks; GG uses ∏ dim S^{l_i}.
Integer graded_dim_E(Family family, unsigned m, unsigned r, unsigned k = 3);

/// α = λ1−λ2−γ, β = λ2−λ3−γ, δ = λ3 (λ3 = 0 in rank 2). ConstraintViolation
/// unless the index belongs to the family at weight m.
HwvExponent hwv_bijection(const FiltrationIndex& index, unsigned m);
FiltrationIndex hwv_inverse(const HwvExponent& e, unsigned m, unsigned dim);

/// (dim X_k, rank V_k) for the Demailly–Semple tower of (X, V).
std::pair<unsigned, unsigned> tower_dims(unsigned n, unsigned r, unsigned k);

}  // namespace jetdiff
