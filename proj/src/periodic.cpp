#include "verba/periodic.hpp"

#include <algorithm>
#include <numeric>

namespace verba {

namespace {

void require_simple(const Word& A, const char* who) {
  if (!is_simple(A)) fail(Errc::NotSimple, std::string(who) + ": period word is not simple");
}

Word slice(const Word& w, std::size_t from, std::size_t to) {
  std::vector<Syllable> s(w.syllables().begin() + std::ptrdiff_t(from),
                          w.syllables().begin() + std::ptrdiff_t(to));
  return Word::trusted(w.sig(), std::move(s));
}

Word repeat(const Word& base, std::size_t count) {
  std::vector<Syllable> s;
  s.reserve(base.size() * count);
  for (std::size_t i = 0; i < count; ++i)
    s.insert(s.end(), base.syllables().begin(), base.syllables().end());
  return Word::trusted(base.sig(), std::move(s));
}

Word rotation(const Word& w, std::size_t r) {
  std::vector<Syllable> out;
  out.reserve(w.size());
  out.insert(out.end(), w.syllables().begin() + std::ptrdiff_t(r), w.syllables().end());
  out.insert(out.end(), w.syllables().begin(), w.syllables().begin() + std::ptrdiff_t(r));
  return Word::trusted(w.sig(), std::move(out));
}

}  // namespace

std::optional<std::int64_t> is_subword(const Word& U, const Word& W) {
  check_same_signature(U, W);
  if (U.size() > W.size()) return std::nullopt;
  auto w = W.syllables();
  auto u = U.syllables();
  auto it = std::search(w.begin(), w.end(), u.begin(), u.end());
  if (it == w.end() && !u.empty()) return std::nullopt;
  return std::int64_t(it - w.begin());
}

std::optional<std::int64_t> period_phase(const Word& U, const Word& A) {
  require_simple(A, "period_phase");
  check_same_signature(U, A);
  if (U.empty()) return 0;
  // Scan all alignments of U against a power of A long enough to contain it.
  std::size_t k = (U.size() + 2 * A.size()) / A.size() + 1;
  Word big = repeat(A, k);
  for (std::size_t p = 0; p < A.size(); ++p) {
    if (p + U.size() > big.size()) break;
    bool ok = true;
    for (std::size_t i = 0; i < U.size() && ok; ++i) ok = big[p + i] == U[i];
    if (ok) return std::int64_t(p);
  }
  return std::nullopt;
}

bool is_periodic(const Word& U, const Word& A) { return period_phase(U, A).has_value(); }

PeriodSplit fine_wilf_split(const Word& w1, const Word& w2, const Word& U) {
  check_same_signature(w1, w2);
  check_same_signature(w1, U);
  if (!is_cyclically_reduced(w1) || !is_cyclically_reduced(w2) || w1.size() < 2 || w2.size() < 2)
    fail(Errc::NoCommonStructure, "fine_wilf_split needs cyclically reduced words of length >= 2");
  HypDecomposition d1 = hyperbolic_decompose(w1);
  HypDecomposition d2 = hyperbolic_decompose(w2);
  std::int64_t r1 = std::int64_t(d1.A.size());
  std::int64_t r2 = std::int64_t(d2.A.size());
  std::int64_t bound = r1 + r2 - std::gcd(r1, r2);
  if (std::int64_t(U.size()) < bound)
    fail(Errc::PreconditionTooShort, "common subword of length " + std::to_string(U.size()) +
                                         " is below the Fine-Wilf bound " + std::to_string(bound));
  if (!is_periodic(U, d1.A) || !is_periodic(U, d2.A))
    fail(Errc::NoCommonStructure, "U is not a common subword of powers of both inputs");

  // Scan cut positions of the primitive period of w1; minimal |C1| wins.
  for (std::size_t r = 0; r < d1.A.size(); ++r) {
    Word rot = rotation(d1.A, r);
    if (w2.size() % rot.size() != 0) continue;
    if (repeat(rot, w2.size() / rot.size()) != w2) continue;
    return PeriodSplit{slice(d1.A, 0, r), slice(d1.A, r, d1.A.size()),
                       std::int64_t(w1.size() / d1.A.size()), std::int64_t(w2.size() / rot.size())};
  }
  fail(Errc::NoCommonStructure, "no common rotation structure despite periodicity preconditions");
}

PeriodSplit p3_inverse_periodic(const Word& B) {
  require_simple(B, "p3_inverse_periodic");
  Word Binv = invert(B);
  auto phase = period_phase(Binv, B);
  if (!phase) fail(Errc::NotApplicable, "B^-1 is not B-periodic");
  for (std::size_t r = 0; r <= B.size(); ++r) {
    Word C1 = slice(B, 0, r);
    Word C2 = slice(B, r, B.size());
    if (multiply(C2, C1) != Binv) continue;
    if (!multiply(C1, C1).empty() || !multiply(C2, C2).empty()) continue;
    return PeriodSplit{C1, C2, 1, 1};
  }
  fail(Errc::NotApplicable, "no involutive split found");
}

PeriodSplit p4_double_periodic(const Word& A, const Word& B, const Word& U) {
  require_simple(A, "p4_double_periodic");
  require_simple(B, "p4_double_periodic");
  if (std::int64_t(U.size()) < std::int64_t(A.size()) + std::int64_t(B.size()) - 1)
    fail(Errc::PreconditionTooShort,
         "|U| must be at least |A|+|B|-1 = " + std::to_string(A.size() + B.size() - 1));
  auto pa = period_phase(U, A);
  auto pb = period_phase(U, B);
  if (!pa || !pb) fail(Errc::NoCommonStructure, "U is not both A- and B-periodic");
  if (A.size() != B.size()) fail(Errc::NoCommonStructure, "periods of distinct lengths cannot split");
  std::size_t r = std::size_t(((*pa - *pb) % std::int64_t(A.size()) + std::int64_t(A.size())) %
                              std::int64_t(A.size()));
  Word C1 = slice(A, 0, r);
  Word C2 = slice(A, r, A.size());
  if (multiply(C2, C1) != B) fail(Errc::NoCommonStructure, "alignment produced no valid split");
  return PeriodSplit{C1, C2, 1, 1};
}

}  // namespace verba
