#pragma once

#include <optional>

#include "verba/word.hpp"

namespace verba {

/// A two-part split of commensurable periodic structure.
struct PeriodSplit {
  Word C1;
  Word C2;
  std::int64_t m1 = 0;  // exponents reported by the producing operation
  std::int64_t m2 = 0;
};

/// Smallest syllable offset of a contiguous exact occurrence of U in W.
std::optional<std::int64_t> is_subword(const Word& U, const Word& W);

/// True iff U occurs in some power of the simple word A.
bool is_periodic(const Word& U, const Word& A);

/// Phase of U inside the bi-infinite power of A: smallest p with
/// U[i] == A[(p+i) mod |A|] for all i, or nullopt.
std::optional<std::int64_t> period_phase(const Word& U, const Word& A);

/// Splits per the common-period theorem: w1 == (C1.C2)^m1, w2 == (C2.C1)^m2.
/// Returns the split with minimal |C1|.
PeriodSplit fine_wilf_split(const Word& w1, const Word& w2, const Word& U);

/// B simple with B^-1 B-periodic: the unique split B == C1.C2,
/// B^-1 == C2.C1 with C1^2 == C2^2 == 1.
PeriodSplit p3_inverse_periodic(const Word& B);

/// U simultaneously A- and B-periodic with |U| >= |A|+|B|-1: the unique
/// split A == C1.C2, B == C2.C1.
PeriodSplit p4_double_periodic(const Word& A, const Word& B, const Word& U);

}  // namespace verba
