#include "verba/verify.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

#include "verba/periodic.hpp"
#include "verba/runword.hpp"
#include "verba/tree.hpp"

namespace verba {

std::string SuiteReport::to_text() const {
  std::ostringstream out;
  out << "suite " << suite << ": " << (ok() ? "PASS" : "FAIL") << " (" << passed << "/" << trials
      << " trials, " << vacuous << " vacuous, seed " << seed << ", "
      << std::int64_t(elapsed_ms) << " ms)\n";
  for (const Counterexample& c : failures) out << "  trial " << c.trial << ": " << c.description << '\n';
  return out.str();
}

std::vector<Word> enumerate_words(const SignaturePtr& sig, int max_len) {
  std::vector<Word> out{Word::identity(sig)};
  std::size_t level_start = 0;
  for (int len = 1; len <= max_len; ++len) {
    std::size_t level_end = out.size();
    for (std::size_t w = level_start; w < level_end; ++w) {
      for (int f = 0; f < sig->factor_count(); ++f) {
        if (!out[w].empty() && int(out[w].back().factor) == f) continue;
        for (int e = 1; e < sig->factor(f).order(); ++e) {
          std::vector<Syllable> s(out[w].syllables().begin(), out[w].syllables().end());
          s.push_back(Syllable{std::uint16_t(f), Elt(e)});
          out.push_back(Word::trusted(sig, std::move(s)));
        }
      }
    }
    level_start = level_end;
  }
  return out;
}

Word sample_word(const SignaturePtr& sig, std::mt19937_64& rng, int len) {
  std::vector<Syllable> s;
  int prev = -1;
  for (int i = 0; i < len; ++i) {
    int f = int(rng() % std::uint64_t(sig->factor_count()));
    if (f == prev) f = (f + 1) % sig->factor_count();
    int e = 1 + int(rng() % std::uint64_t(sig->factor(f).order() - 1));
    s.push_back(Syllable{std::uint16_t(f), Elt(e)});
    prev = f;
  }
  return Word::trusted(sig, std::move(s));
}

Word sample_hyperbolic(const SignaturePtr& sig, std::mt19937_64& rng, int max_len) {
  for (;;) {
    int len = 2 + int(rng() % std::uint64_t(std::max(1, max_len - 1)));
    Word w = sample_word(sig, rng, len);
    if (is_hyperbolic(w)) return w;
  }
}

std::pair<Word, Word> sample_noncommuting_pair(const SignaturePtr& sig, std::mt19937_64& rng,
                                               int max_len) {
  for (;;) {
    Word a = sample_hyperbolic(sig, rng, max_len);
    Word b = sample_hyperbolic(sig, rng, max_len);
    if (radical_length(a) != radical_length(b)) return {a, b};  // cannot commute
    if (!commutator(a, b).empty()) return {a, b};
  }
}

namespace {

class SuiteRunner {
 public:
  SuiteRunner(std::string name, std::uint64_t seed) : start_(std::chrono::steady_clock::now()) {
    report_.suite = std::move(name);
    report_.seed = seed;
  }
  void pass() {
    ++report_.trials;
    ++report_.passed;
  }
  void vacuous() {
    ++report_.trials;
    ++report_.vacuous;
  }
  void fail(const std::string& description) {
    report_.failures.push_back(Counterexample{report_.trials, description});
    ++report_.trials;
  }
  void check(bool ok, const std::string& description) {
    if (ok)
      pass();
    else
      fail(description);
  }
  SuiteReport finish() {
    report_.elapsed_ms = std::chrono::duration<double, std::milli>(
                             std::chrono::steady_clock::now() - start_)
                             .count();
    return report_;
  }

 private:
  SuiteReport report_;
  std::chrono::steady_clock::time_point start_;
};

std::string lit(const Word& w) { return "\"" + format_word(w) + "\""; }

// Survivor counts at the reduction seam of u.v; a kept count of zero on a
// side means the outermost syllable of that side was cancelled or merged.
struct SeamStats {
  std::size_t left_kept;
  std::size_t right_kept;
};

SeamStats seam_stats(const Word& u, const Word& v) {
  std::size_t i = u.size();
  std::size_t j = 0;
  while (i > 0 && j < v.size()) {
    const Syllable& a = u[i - 1];
    const Syllable& b = v[j];
    if (a.factor != b.factor) break;
    Elt prod = u.sig()->factor(int(a.factor)).mult(a.letter, b.letter);
    --i;
    ++j;
    if (prod != 0) break;  // merge consumed both outermost syllables
  }
  return SeamStats{i, v.size() - j};
}

// First/last syllable survival of the product left . mid . right.
struct EndpointSurvival {
  bool first;
  bool last;
};

EndpointSurvival endpoints_survive(const Word& left, const Word& mid, const Word& right) {
  Word tail = multiply(mid, right);
  SeamStats inner = seam_stats(mid, right);
  SeamStats outer = seam_stats(left, tail);
  bool last_ok = inner.right_kept > 0 && outer.right_kept > 0;
  bool first_ok = outer.left_kept > 0;
  return EndpointSurvival{first_ok, last_ok};
}

Word random_simple(const SignaturePtr& sig, std::mt19937_64& rng, int max_len) {
  for (;;) {
    Word w = sample_word(sig, rng, 2 + int(rng() % std::uint64_t(std::max(1, max_len - 1))));
    if (is_simple(w)) return w;
  }
}

}  // namespace

SuiteReport check_words(const SignaturePtr& sig, std::int64_t samples, std::uint64_t seed) {
  SuiteRunner run("words", seed);
  std::mt19937_64 rng(seed);
  for (std::int64_t t = 0; t < samples; ++t) {
    Word x = sample_word(sig, rng, int(rng() % 9));
    Word y = sample_word(sig, rng, int(rng() % 9));
    Word z = sample_word(sig, rng, int(rng() % 9));
    std::string inputs = lit(x) + ", " + lit(y) + ", " + lit(z);
    if (multiply(multiply(x, y), z) != multiply(x, multiply(y, z))) {
      run.fail("associativity failed on " + inputs);
      continue;
    }
    if (!multiply(x, invert(x)).empty()) {
      run.fail("inverse failed on " + lit(x));
      continue;
    }
    std::vector<Syllable> cat(x.syllables().begin(), x.syllables().end());
    cat.insert(cat.end(), y.syllables().begin(), y.syllables().end());
    if (Word::reduce(sig, cat) != multiply(x, y)) {
      run.fail("reduce/multiply mismatch on " + inputs);
      continue;
    }

    Word w = sample_hyperbolic(sig, rng, 8);
    std::int64_t k = 1 + std::int64_t(rng() % 6);
    Word wk = power(w, k);
    HypDecomposition d = hyperbolic_decompose(w);
    bool ok = central_length(wk) == k * central_length(w) &&
              radical_length(wk) == radical_length(w) &&
              radical_length(w) <= central_length(w) && central_length(w) <= length(w) &&
              length(wk) <= k * length(w) && reassemble(d) == w &&
              (radical_length(w) == central_length(w)) == (d.k == 1) && root(wk, k) == w;
    Word g = sample_word(sig, rng, int(rng() % 5));
    ok = ok && central_length(conjugate(w, g)) == central_length(w) &&
         radical_length(conjugate(w, g)) == radical_length(w);
    run.check(ok, "length laws failed on w=" + lit(w) + " k=" + std::to_string(k) +
                      " g=" + lit(g));
  }
  return run.finish();
}

SuiteReport check_finewilf(const SignaturePtr& sig, std::int64_t samples, std::uint64_t seed) {
  SuiteRunner run("finewilf", seed);
  std::mt19937_64 rng(seed);

  auto word_slice = [&](const Word& w, std::size_t from, std::size_t to) {
    std::vector<Syllable> s(w.syllables().begin() + std::ptrdiff_t(from),
                            w.syllables().begin() + std::ptrdiff_t(to));
    return Word::trusted(sig, std::move(s));
  };
  auto rotation = [&](const Word& w, std::size_t r) {
    std::vector<Syllable> s(w.syllables().begin() + std::ptrdiff_t(r), w.syllables().end());
    s.insert(s.end(), w.syllables().begin(), w.syllables().begin() + std::ptrdiff_t(r));
    return Word::trusted(sig, std::move(s));
  };

  for (std::int64_t t = 0; t < samples; ++t) {
    switch (t % 4) {
      case 0: {  // P1: occurrences of B in B^k sit on the |B| grid
        Word B = random_simple(sig, rng, 5);
        int k = 2 + int(rng() % 6);
        Word Bk = power(B, k);
        bool ok = true;
        for (std::size_t off = 0; off + B.size() <= Bk.size() && ok; ++off) {
          bool match = std::equal(B.syllables().begin(), B.syllables().end(),
                                  Bk.syllables().begin() + std::ptrdiff_t(off));
          if (match && off % B.size() != 0) ok = false;
        }
        run.check(ok, "P1 failed for B=" + lit(B) + " k=" + std::to_string(k));
        break;
      }
      case 1: {  // P2: B.U.B inside B^k forces U = B^m
        Word B = random_simple(sig, rng, 5);
        int k = 3 + int(rng() % 5);
        Word Bk = power(B, k);
        bool ok = true;
        for (std::size_t off = 0; off + 2 * B.size() <= Bk.size() && ok; ++off) {
          for (std::size_t end = off + 2 * B.size(); end <= Bk.size() && ok; ++end) {
            Word T = word_slice(Bk, off, end);
            if (!std::equal(B.syllables().begin(), B.syllables().end(), T.syllables().begin()))
              continue;
            if (!std::equal(B.syllables().begin(), B.syllables().end(),
                            T.syllables().end() - std::ptrdiff_t(B.size())))
              continue;
            Word U = word_slice(T, B.size(), T.size() - B.size());
            bool is_power = U.size() % B.size() == 0 && U == power(B, std::int64_t(U.size() / B.size()));
            if (!is_power) ok = false;
          }
        }
        run.check(ok, "P2 failed for B=" + lit(B) + " k=" + std::to_string(k));
        break;
      }
      case 2: {  // P3 on constructed involutive splits + uniqueness scan
        // C1, C2 of shape g^-1 c g with c an involution letter (or empty).
        auto involution = [&]() -> std::optional<Word> {
          for (int attempt = 0; attempt < 40; ++attempt) {
            Word g = sample_word(sig, rng, int(rng() % 3));
            int f = int(rng() % std::uint64_t(sig->factor_count()));
            const FactorGroup& fg = sig->factor(f);
            std::vector<Elt> invol;
            for (int e = 1; e < fg.order(); ++e)
              if (fg.mult(Elt(e), Elt(e)) == 0) invol.push_back(Elt(e));
            if (invol.empty()) continue;
            std::vector<Syllable> c{Syllable{std::uint16_t(f), invol[rng() % invol.size()]}};
            return conjugate(Word::trusted(sig, std::move(c)), g);
          }
          return std::nullopt;
        };
        auto c1 = involution();
        auto c2 = involution();
        if (!c1 || !c2) {
          run.vacuous();
          break;
        }
        Word B = multiply(*c1, *c2);
        if (!is_simple(B) || !is_periodic(invert(B), B)) {
          run.vacuous();
          break;
        }
        PeriodSplit s = p3_inverse_periodic(B);
        bool ok = multiply(s.C1, s.C2) == B && multiply(s.C2, s.C1) == invert(B) &&
                  multiply(s.C1, s.C1).empty() && multiply(s.C2, s.C2).empty();
        int valid = 0;
        for (std::size_t r = 0; r <= B.size(); ++r) {
          Word C1 = word_slice(B, 0, r);
          Word C2 = word_slice(B, r, B.size());
          if (multiply(C2, C1) == invert(B) && multiply(C1, C1).empty() &&
              multiply(C2, C2).empty())
            ++valid;
        }
        ok = ok && valid == 1;
        run.check(ok, "P3 failed for B=" + lit(B) + " (valid cuts: " + std::to_string(valid) + ")");
        break;
      }
      default: {  // P4 via a rotated period + uniqueness; split identities
        Word A = random_simple(sig, rng, 5);
        std::size_t r = rng() % A.size();
        Word B = rotation(A, r);
        int reps = 2 + int((A.size() + B.size()) / A.size());
        Word U = word_slice(power(A, reps), 0, A.size() + B.size() - 1 + rng() % A.size());
        PeriodSplit s = p4_double_periodic(A, B, U);
        bool ok = multiply(s.C1, s.C2) == A && multiply(s.C2, s.C1) == B;
        int valid = 0;
        for (std::size_t cut = 0; cut < A.size(); ++cut) {
          Word C1 = word_slice(A, 0, cut);
          Word C2 = word_slice(A, cut, A.size());
          if (multiply(C1, C2) == A && multiply(C2, C1) == B) ++valid;
        }
        ok = ok && valid == 1;
        // The final clause: U starting with both A and B forces A = B.
        if (period_phase(U, A) == 0 && period_phase(U, B) == 0) ok = ok && A == B;
        run.check(ok, "P4 failed for A=" + lit(A) + " r=" + std::to_string(r) +
                          " (valid cuts: " + std::to_string(valid) + ")");
        break;
      }
    }
  }
  return run.finish();
}

SuiteReport check_boundary_lemmas(const SignaturePtr& sig, std::int64_t samples,
                                  std::uint64_t seed) {
  SuiteRunner run("boundary", seed);
  std::mt19937_64 rng(seed);
  for (std::int64_t t = 0; t < samples; ++t) {
    switch (t % 4) {
      case 0: {  // first/last syllable of B^k a B^k survives for hyperbolic a
        Word B = random_simple(sig, rng, 4);
        Word a = sample_hyperbolic(sig, rng, 6);
        std::int64_t k = std::int64_t((a.size() + B.size() - 1) / B.size()) + 2;
        Word Bk = power(B, k);
        EndpointSurvival s = endpoints_survive(Bk, a, Bk);
        run.check(s.first && s.last,
                  "endpoint lost in B^k a B^k, B=" + lit(B) + " a=" + lit(a) +
                      " k=" + std::to_string(k));
        break;
      }
      case 1: {  // same for B^-k a B^k whenever [a,B] != 1
        Word B = random_simple(sig, rng, 4);
        Word a = sample_word(sig, rng, 1 + int(rng() % 6));
        if (a.empty() || commutator(a, B).empty()) {
          run.vacuous();
          break;
        }
        std::int64_t k = std::int64_t((a.size() + B.size() - 1) / B.size()) + 2;
        EndpointSurvival s = endpoints_survive(power(B, -k), a, power(B, k));
        run.check(s.first && s.last,
                  "endpoint lost in B^-k a B^k, B=" + lit(B) + " a=" + lit(a) +
                      " k=" + std::to_string(k));
        break;
      }
      case 2: {  // A^k f B^m: endpoints survive or the split identities hold
        Word A = random_simple(sig, rng, 4);
        Word B = random_simple(sig, rng, 4);
        Word f;
        if (t % 3 == 0) {
          // Touching instance: f = A^-alpha C2 B^-beta for a split of B.
          std::size_t cut = rng() % (B.size() + 1);
          std::vector<Syllable> c2(B.syllables().begin() + std::ptrdiff_t(cut),
                                   B.syllables().end());
          Word C2 = Word::trusted(sig, std::move(c2));
          std::vector<Syllable> c1(B.syllables().begin(),
                                   B.syllables().begin() + std::ptrdiff_t(cut));
          Word C1 = Word::trusted(sig, std::move(c1));
          A = multiply(invert(C1), invert(C2));
          if (!is_simple(A)) {
            run.vacuous();
            break;
          }
          std::int64_t alpha = std::int64_t(rng() % 3);
          std::int64_t beta = std::int64_t(rng() % 3);
          f = multiply(multiply(power(A, -alpha), C2), power(B, -beta));
        } else {
          f = sample_word(sig, rng, int(rng() % 5));
        }
        std::int64_t k = std::int64_t((f.size() + B.size()) / A.size()) + 2;
        std::int64_t m = std::int64_t((f.size() + A.size()) / B.size()) + 2;
        EndpointSurvival s = endpoints_survive(power(A, k), f, power(B, m));
        if (s.first && s.last) {
          run.pass();
          break;
        }
        // Find the split and the exponents of the three equal forms.
        bool found = false;
        for (std::size_t cut = 0; cut <= B.size() && !found; ++cut) {
          std::vector<Syllable> c1s(B.syllables().begin(),
                                    B.syllables().begin() + std::ptrdiff_t(cut));
          std::vector<Syllable> c2s(B.syllables().begin() + std::ptrdiff_t(cut),
                                    B.syllables().end());
          Word C1 = Word::trusted(sig, std::move(c1s));
          Word C2 = Word::trusted(sig, std::move(c2s));
          if (multiply(invert(C1), invert(C2)) != A) continue;
          std::int64_t bound = std::int64_t(f.size() / std::min(A.size(), B.size())) + 2;
          for (std::int64_t alpha = -bound; alpha <= bound && !found; ++alpha)
            for (std::int64_t beta = -bound; beta <= bound && !found; ++beta) {
              if (f != multiply(multiply(power(A, -alpha), C2), power(B, -beta))) continue;
              if (f != multiply(C2, power(B, alpha - beta))) continue;
              if (f != multiply(power(A, -alpha + beta - 1), invert(C1))) continue;
              found = true;
            }
        }
        run.check(found, "A^k f B^m touched an endpoint but no split explains it: A=" + lit(A) +
                             " B=" + lit(B) + " f=" + lit(f));
        break;
      }
      default: {  // B^{6k+8} f^-1 A^l f B^{6k+8} endpoints survive
        Word B = random_simple(sig, rng, 5);
        Word A = random_simple(sig, rng, 4);
        if (B.size() <= A.size()) {
          run.vacuous();
          break;
        }
        Word f = sample_word(sig, rng, int(rng() % 6));
        std::int64_t k = std::int64_t(f.size() / B.size()) + 1;
        std::int64_t l = 1 + std::int64_t(rng() % 5);
        Word big = power(B, 6 * k + 8);
        Word mid = multiply(multiply(invert(f), power(A, l)), f);
        EndpointSurvival s = endpoints_survive(big, mid, big);
        run.check(s.first && s.last, "endpoint lost in B^{6k+8} f^-1 A^l f B^{6k+8}: B=" + lit(B) +
                                         " A=" + lit(A) + " f=" + lit(f) +
                                         " l=" + std::to_string(l));
        break;
      }
    }
  }
  return run.finish();
}

SuiteReport check_mcl(const SignaturePtr& sig, std::int64_t samples, std::uint64_t seed) {
  SuiteRunner run("mcl", seed);
  std::mt19937_64 rng(seed);

  // X1, X2 lie in a common conjugate factor iff conjugating both by the
  // cyclic-reduction conjugator of X1 lands them in one factor.
  auto common_conjugate_factor = [&](const Word& X1, const Word& X2) -> bool {
    auto [c1, f1] = cyclic_reduce(X1);
    if (c1.size() != 1) return false;
    Word moved = multiply(multiply(f1, X2), invert(f1));
    return moved.size() == 1 && moved[0].factor == c1[0].factor;
  };

  bool has_nonabelian = false;
  for (int f = 0; f < sig->factor_count(); ++f)
    if (!sig->factor(f).is_abelian()) has_nonabelian = true;

  for (std::int64_t t = 0; t < samples; ++t) {
    switch (t % 5) {
      case 0: {  // C1
        Word X1, X2;
        if (t % 2 == 0 && has_nonabelian) {
          // Constructed positive: a conjugate pair from a nonabelian factor.
          int f = 0;
          while (sig->factor(f).is_abelian()) ++f;
          const FactorGroup& fg = sig->factor(f);
          Elt h1 = 0, h2 = 0;
          do {
            h1 = Elt(1 + rng() % std::uint64_t(fg.order() - 1));
            h2 = Elt(1 + rng() % std::uint64_t(fg.order() - 1));
          } while (fg.mult(h1, h2) == fg.mult(h2, h1));
          Word g = sample_word(sig, rng, int(rng() % 4));
          std::vector<Syllable> s1{Syllable{std::uint16_t(f), h1}};
          std::vector<Syllable> s2{Syllable{std::uint16_t(f), h2}};
          X1 = conjugate(Word::trusted(sig, std::move(s1)), g);
          X2 = conjugate(Word::trusted(sig, std::move(s2)), g);
        } else {
          X1 = sample_word(sig, rng, int(rng() % 6));
          X2 = sample_word(sig, rng, int(rng() % 6));
        }
        Word c = commutator(X1, X2);
        if (c.empty() || is_hyperbolic(c)) {
          run.vacuous();
          break;
        }
        run.check(common_conjugate_factor(X1, X2),
                  "[X1,X2] elliptic nontrivial but X1, X2 not in one conjugate factor: X1=" +
                      lit(X1) + " X2=" + lit(X2));
        break;
      }
      case 1: {  // C2: commuting hyperbolics share their radical length
        Word h = sample_hyperbolic(sig, rng, 6);
        std::int64_t e1 = 1 + std::int64_t(rng() % 4);
        std::int64_t e2 = 1 + std::int64_t(rng() % 4);
        run.check(radical_length(power(h, e1)) == radical_length(power(h, e2)),
                  "C2 failed for h=" + lit(h));
        break;
      }
      case 2: {  // C3 strict inequality for n in {2,3}
        auto [X1, X2] = sample_noncommuting_pair(sig, rng, 5);
        bool ok = true;
        for (std::int64_t n = 2; n <= 3; ++n) {
          std::int64_t lhs = central_length(commutator(power(X1, n), power(X2, n)));
          if (lhs <= 2 * (n - 1) * (central_length(X1) + central_length(X2))) ok = false;
        }
        run.check(ok, "C3 failed for X1=" + lit(X1) + " X2=" + lit(X2));
        break;
      }
      case 3: {  // C4 with the explicit threshold
        Word B = random_simple(sig, rng, 4);
        Word f = sample_word(sig, rng, int(rng() % 4));
        Word X2 = multiply(multiply(invert(f), B), f);
        if (!is_hyperbolic(X2)) {
          run.vacuous();
          break;
        }
        HypDecomposition dd = hyperbolic_decompose(X2);
        B = dd.A;
        f = dd.f;
        Word X1 = sample_hyperbolic(sig, rng, 5);
        if (commutator(X1, X2).empty()) {
          run.vacuous();
          break;
        }
        std::int64_t n = 2 + std::int64_t(rng() % 2);
        Word a = multiply(multiply(f, power(X1, n)), invert(f));
        std::int64_t k = std::int64_t((a.size() + B.size() - 1) / B.size()) + 2;
        Word E1 = multiply(multiply(power(B, k), invert(a)), power(B, -k));
        Word E2 = multiply(multiply(power(B, -k), a), power(B, k));
        std::int64_t num = (2 * k + 3) * std::int64_t(B.size()) + std::int64_t(E1.size()) +
                           std::int64_t(E2.size());
        std::int64_t den = n * std::int64_t(B.size());
        std::int64_t N = (num + den - 1) / den;
        bool ok = true;
        std::int64_t bad_m = 0, bad_exp = 0;
        for (std::int64_t m = N + 1; m <= N + 4; ++m) {
          Word w = commutator(power(X1, n), power(X2, n * m));
          std::int64_t expnt = hyperbolic_decompose(w).k;
          if (expnt > 2) {
            ok = false;
            bad_m = m;
            bad_exp = expnt;
          }
        }
        run.check(ok, "C4 exponent " + std::to_string(bad_exp) + " > 2 at m=" +
                          std::to_string(bad_m) + " for X1=" + lit(X1) + " X2=" + lit(X2) +
                          " n=" + std::to_string(n) + " N=" + std::to_string(N));
        break;
      }
      default: {  // C5: radical length exceeds any requested bound
        auto [X1, X2] = sample_noncommuting_pair(sig, rng, 4);
        std::int64_t n = 2;
        std::int64_t C = 20 + std::int64_t(rng() % 40);
        bool found = false;
        for (std::int64_t m = 1; m <= 64 && !found; ++m)
          if (radical_length(commutator(power(X1, n), power(X2, n * m))) > C) found = true;
        run.check(found, "C5 found no m with |[X1^n,X2^{nm}]|_r > " + std::to_string(C) +
                             " for X1=" + lit(X1) + " X2=" + lit(X2));
        break;
      }
    }
  }
  return run.finish();
}

SuiteReport check_tree_lemmas(const SignaturePtr& sig, std::int64_t samples, std::uint64_t seed) {
  SuiteRunner run("tree", seed);
  std::mt19937_64 rng(seed);
  for (std::int64_t t = 0; t < samples; ++t) {
    switch (t % 3) {
      case 0: {  // translation length equals central length
        Word h = sample_hyperbolic(sig, rng, 6);
        run.check(translation_length(h).half_units == 2 * central_length(h),
                  "translation length mismatch for h=" + lit(h));
        break;
      }
      case 1: {  // axis overlap bound
        auto [X1, X2] = sample_noncommuting_pair(sig, rng, 5);
        int window = int(2 * (central_length(X1) + central_length(X2)) + 8);
        try {
          AxisOverlap o = axis_overlap(X1, X2, window);
          if (o.kind == AxisOverlap::Kind::segment)
            run.check(o.length.half_units <= 2 * (radical_length(X1) + radical_length(X2) - 1),
                      "overlap bound failed for X1=" + lit(X1) + " X2=" + lit(X2));
          else
            run.pass();
        } catch (const Error& e) {
          if (e.code() == Errc::WindowTooSmall)
            run.vacuous();
          else
            throw;
        }
        break;
      }
      default: {  // commutator power lower bound, k in {2,3}
        auto [X1, X2] = sample_noncommuting_pair(sig, rng, 4);
        int window = int(2 * (central_length(X1) + central_length(X2)) + 8);
        std::int64_t overlap_edges = 0;
        try {
          AxisOverlap o = axis_overlap(X1, X2, window);
          if (o.kind == AxisOverlap::Kind::segment) overlap_edges = o.length.half_units;
        } catch (const Error& e) {
          if (e.code() != Errc::WindowTooSmall) throw;
          run.vacuous();
          break;
        }
        bool ok = true;
        for (std::int64_t k = 2; k <= 3; ++k) {
          std::int64_t lhs = 2 * central_length(commutator(power(X1, k), power(X2, k)));
          std::int64_t rhs =
              4 * (k * central_length(X1) + k * central_length(X2)) - 2 * overlap_edges;
          if (lhs < rhs) ok = false;
        }
        run.check(ok, "commutator power bound failed for X1=" + lit(X1) + " X2=" + lit(X2));
        break;
      }
    }
  }
  return run.finish();
}

SuiteReport check_l2(const SignaturePtr& sig, std::int64_t samples, std::uint64_t seed,
                     std::uint64_t budget) {
  SuiteRunner run("l2", seed);
  std::mt19937_64 rng(seed);
  for (std::int64_t t = 0; t < samples; ++t) {
    auto [X1, X2] = sample_noncommuting_pair(sig, rng, 4);
    std::int64_t k = 1 + std::int64_t(rng() % 2);
    try {
      WStructure w = w_structure(X1, X2, k, budget);  // verifies bounds + reassembly
      Word val = conjugate(w.W, invert(w.conjugator));
      bool ok = is_hyperbolic(val) && hyperbolic_decompose(val).k == 1;
      run.check(ok, "L2 value is a proper power or elliptic for X1=" + lit(X1) +
                        " X2=" + lit(X2) + " k=" + std::to_string(k));
    } catch (const Error& e) {
      run.fail(std::string("W structure failed: ") + e.what() + " for X1=" + lit(X1) +
               " X2=" + lit(X2) + " k=" + std::to_string(k));
    }
  }
  return run.finish();
}

namespace {

// L2(X1, X2^m) in run form: s . B^{5000l} Y1 B^{200l} Y2^m B^{400l} Y1^-1
// B^{600l} Y2^-m B^{5000l} . s^-1, assembled from the axis data identity
// [Y1^10, Y2^{10m}] = B^l. Exact; never materializes the full word.
RunWord l2_run_value(const CommutatorAxisData& d, std::uint64_t budget) {
  // |Y2^k| < 4|B^l| by the axis-data size condition, so this stays flat.
  if (4 * std::uint64_t(d.l) * d.B.size() > budget)
    throw BudgetError("axis data pieces exceed the syllable budget", 4 * std::uint64_t(d.l) * d.B.size());
  Word y2m = power(d.Y2, d.k);
  RunWord acc = RunWord::from_word(d.s);
  acc = multiply(acc, RunWord::from_power(d.B, 5000 * d.l));
  acc = multiply(acc, RunWord::from_word(d.Y1));
  acc = multiply(acc, RunWord::from_power(d.B, 200 * d.l));
  acc = multiply(acc, RunWord::from_word(y2m));
  acc = multiply(acc, RunWord::from_power(d.B, 400 * d.l));
  acc = multiply(acc, RunWord::from_word(invert(d.Y1)));
  acc = multiply(acc, RunWord::from_power(d.B, 600 * d.l));
  acc = multiply(acc, RunWord::from_word(invert(y2m)));
  acc = multiply(acc, RunWord::from_power(d.B, 5000 * d.l));
  acc = multiply(acc, RunWord::from_word(invert(d.s)));
  return acc;
}

}  // namespace

SuiteReport check_ticadd2(const SignaturePtr& sig, std::int64_t samples, std::uint64_t seed,
                          std::uint64_t budget) {
  SuiteRunner run("ticadd2", seed);
  std::mt19937_64 rng(seed);
  for (std::int64_t t = 0; t < samples; ++t) {
    // A small hypothesis-satisfying instance.
    Word X0 = sample_hyperbolic(sig, rng, 3);
    Word X1 = sample_hyperbolic(sig, rng, 3);
    Word X2 = sample_hyperbolic(sig, rng, 3);
    while (commutator(X0, X1).empty()) X0 = sample_hyperbolic(sig, rng, 3);
    while (commutator(X1, X2).empty()) X2 = sample_hyperbolic(sig, rng, 3);
    Word B1;
    std::int64_t m = 0;
    CommutatorAxisData axis;
    try {
      B1 = l2_value(X0, X1, budget);
      m = kappa(std::int64_t(B1.size()), X1, X2, budget);
      axis = commutator_axis_data(X1, X2, m, budget);
      // The hypothesis conditions at the chosen m.
      if (!(axis.l <= 2 && std::int64_t(axis.B.size()) > std::int64_t(B1.size()) &&
            4 * std::int64_t(axis.B.size()) > std::int64_t(axis.s.size()))) {
        run.vacuous();
        continue;
      }
    } catch (const Error& e) {
      if (e.code() == Errc::SearchExhausted || e.code() == Errc::BudgetExceeded) {
        run.vacuous();
        continue;
      }
      throw;
    }
    RunWord B2 = l2_run_value(axis, budget);
    RunWord B1r = RunWord::from_word(B1);

    HypDecomposition dx1 = hyperbolic_decompose(X1);
    std::int64_t cX1 = central_length(X1);

    bool ok = true;
    std::string why;
    for (std::int64_t l1 = -2; l1 <= 2 && ok; ++l1) {
      for (std::int64_t l2 = -2; l2 <= 2 && ok; ++l2) {
        if (l1 == 0 && l2 == 0) continue;
        RunWord base = multiply(B1r.power(l1), B2.power(l2));
        std::int64_t base_cyc = base.cyclic_length();
        for (std::int64_t l3 : {std::int64_t(-2), std::int64_t(-1), std::int64_t(1),
                                std::int64_t(2)}) {
          // A nonzero l3 with base^l3 = X1^l4 is exactly what rigidity rules out.
          if (base_cyc <= 1) {
            // base elliptic or trivial: only X1^0 = 1 could match.
            if (base.power(l3).is_identity()) {
              ok = false;
              why = "base^" + std::to_string(l3) + " collapsed to 1 at l1=" +
                    std::to_string(l1) + " l2=" + std::to_string(l2);
            }
            continue;
          }
          std::int64_t ucyc = (l3 < 0 ? -l3 : l3) * base_cyc;
          if (ucyc % cX1 != 0) continue;
          std::int64_t l4 = ucyc / cX1;
          RunWord u = base.power(l3);
          for (std::int64_t sign : {std::int64_t(1), std::int64_t(-1)}) {
            RunWord rhs = RunWord::from_word(invert(dx1.f));
            rhs = multiply(rhs, RunWord::from_power(dx1.A, dx1.k * l4 * sign));
            rhs = multiply(rhs, RunWord::from_word(dx1.f));
            if (u == rhs) {
              ok = false;
              why = "equality held with l1=" + std::to_string(l1) + " l2=" + std::to_string(l2) +
                    " l3=" + std::to_string(l3) + " l4=" + std::to_string(l4 * sign);
            }
          }
        }
      }
    }
    run.check(ok, "equation admitted a nonzero l3 (" + why + ") for X0=" + lit(X0) +
                      " X1=" + lit(X1) + " X2=" + lit(X2) + " m=" + std::to_string(m));
  }
  return run.finish();
}

std::optional<Word> recover_conjugator(const std::vector<Word>& xs, const std::vector<Word>& ys,
                                       const Word& t_value, int cap, std::uint64_t budget) {
  if (xs.size() != ys.size()) fail(Errc::BadArity, "tuple lengths differ");
  for (int j = -cap; j <= cap; ++j) {
    if (std::uint64_t(std::abs(j)) * t_value.size() > budget) continue;
    Word v = power(t_value, j);
    bool all = true;
    for (std::size_t i = 0; i < xs.size() && all; ++i) all = xs[i] == conjugate(ys[i], v);
    if (all) return v;
  }
  return std::nullopt;
}

SuiteReport check_recover(const SignaturePtr& sig, std::int64_t samples, std::uint64_t seed,
                          std::uint64_t budget) {
  SuiteRunner run("recover", seed);
  std::mt19937_64 rng(seed);
  for (std::int64_t t = 0; t < samples; ++t) {
    auto [x0, x1] = sample_noncommuting_pair(sig, rng, 4);
    try {
      TWordFamily fam = t_words({x0, x1}, budget);
      auto tval = fam.value(2, 0);
      if (!tval) {
        run.vacuous();
        continue;
      }
      std::int64_t j0 = 1 + std::int64_t(rng() % 2);
      Word u = power(*tval, j0);
      std::vector<Word> xs{x0, x1};
      std::vector<Word> ys{conjugate(x0, u), conjugate(x1, u)};
      // The hypothesis: equal T values on both tuples.
      Word tx = *tval;
      Word ty = evaluate(fam.root(), ys, budget * 4);
      if (tx != ty) {
        run.fail("covariance failed: T(x) != T(x^u) for x0=" + lit(x0) + " x1=" + lit(x1));
        continue;
      }
      auto v = recover_conjugator(xs, ys, tx, 3, budget);
      bool ok = v.has_value();
      for (std::size_t i = 0; i < xs.size() && ok; ++i) ok = xs[i] == conjugate(ys[i], *v);
      run.check(ok, "no conjugator power recovered for x0=" + lit(x0) + " x1=" + lit(x1) +
                        " u=T^" + std::to_string(j0));
      if (t % 4 == 0) {
        // Identity tuple recovers v = 1.
        auto v1 = recover_conjugator(xs, xs, tx, 3, budget);
        if (!(v1 && v1->empty())) run.fail("identity recovery failed for x0=" + lit(x0));
      }
    } catch (const Error& e) {
      if (e.code() == Errc::BudgetExceeded || e.code() == Errc::SearchExhausted)
        run.vacuous();
      else
        throw;
    }
  }
  return run.finish();
}

std::optional<std::vector<Word>> solve_equation_system(const EquationSystem& system, int max_len,
                                                       std::uint64_t budget) {
  if (system.lhs.empty()) fail(Errc::BadArity, "empty system");
  if (system.lhs.size() != system.rhs.size())
    fail(Errc::BadArity, "system sides have different lengths");
  SignaturePtr sig = system.rhs.front().sig();
  int vars = 0;
  for (const WordExpr& e : system.lhs) vars = std::max(vars, e.arity());
  if (vars == 0) vars = 1;
  std::vector<Word> words = enumerate_words(sig, max_len);
  std::vector<std::size_t> odo(std::size_t(vars), 0);
  for (;;) {
    std::vector<Word> assign;
    assign.reserve(std::size_t(vars));
    for (std::size_t idx : odo) assign.push_back(words[idx]);
    bool all = true;
    for (std::size_t i = 0; i < system.lhs.size() && all; ++i) {
      try {
        all = evaluate(system.lhs[i], assign, budget) == system.rhs[i];
      } catch (const BudgetError&) {
        all = false;
      }
    }
    if (all) return assign;
    std::size_t pos = 0;
    while (pos < odo.size() && ++odo[pos] == words.size()) {
      odo[pos] = 0;
      ++pos;
    }
    if (pos == odo.size()) return std::nullopt;
  }
}

SingleEquationReduction reduce_to_single_equation(const EquationSystem& system, const Word& u1,
                                                  const Word& u2, std::uint64_t budget) {
  if (system.lhs.empty()) fail(Errc::BadArity, "empty system");
  std::vector<Word> tuple = system.rhs;
  tuple.push_back(u1);
  tuple.push_back(u2);
  MWords mw = m_words(tuple, budget);
  int vars = 0;
  for (const WordExpr& e : system.lhs) vars = std::max(vars, e.arity());
  std::vector<WordExpr> repl = system.lhs;
  repl.push_back(WordExpr::var(vars));      // fresh z'
  repl.push_back(WordExpr::var(vars + 1));  // fresh z''
  SingleEquationReduction out;
  out.lhs = substitute(mw.M, repl);
  out.mwords = std::move(mw);
  out.rhs_tuple = std::move(tuple);
  return out;
}

SuiteReport check_solver(const SignaturePtr& sig, std::int64_t samples, std::uint64_t seed) {
  SuiteRunner run("solve-demo", seed);
  std::mt19937_64 rng(seed);
  for (std::int64_t t = 0; t < samples; ++t) {
    if (t % 5 == 4) {
      // A square equation with no solution: z0^2 = single involution letter.
      int f = -1;
      for (int i = 0; i < sig->factor_count() && f < 0; ++i) {
        const FactorGroup& fg = sig->factor(i);
        for (int e = 1; e < fg.order() && f < 0; ++e)
          if (fg.mult(Elt(e), Elt(e)) == 0) f = i;
      }
      if (f < 0) {
        run.vacuous();
        continue;
      }
      Elt letter = 0;
      for (int e = 1; e < sig->factor(f).order(); ++e)
        if (sig->factor(f).mult(Elt(e), Elt(e)) == 0) letter = Elt(e);
      std::vector<Syllable> s{Syllable{std::uint16_t(f), letter}};
      EquationSystem sys;
      sys.lhs.push_back(WordExpr::pow(WordExpr::var(0), 2));
      sys.rhs.push_back(Word::trusted(sig, std::move(s)));
      auto sol = solve_equation_system(sys, 4);
      run.check(!sol.has_value(), "square equation z0^2 = involution was 'solved'");
      continue;
    }
    // Planted solvable system in <= 2 variables.
    int vars = 1 + int(rng() % 2);
    std::vector<Word> planted;
    for (int v = 0; v < vars; ++v) planted.push_back(sample_word(sig, rng, 1 + int(rng() % 3)));
    EquationSystem sys;
    int eqs = 1 + int(rng() % 2);
    for (int e = 0; e < eqs; ++e) {
      WordExpr w = WordExpr::var(int(rng() % std::uint64_t(vars)));
      for (int step = 0; step < int(rng() % 3); ++step) {
        WordExpr next = WordExpr::var(int(rng() % std::uint64_t(vars)));
        switch (rng() % 3) {
          case 0: w = WordExpr::mul(w, next); break;
          case 1: w = WordExpr::mul(w, WordExpr::inv(next)); break;
          default: w = WordExpr::pow(w, 2); break;
        }
      }
      sys.lhs.push_back(w);
      sys.rhs.push_back(evaluate(w, planted, 1 << 20));
    }
    auto sol = solve_equation_system(sys, 4);
    bool ok = sol.has_value();
    for (std::size_t i = 0; i < sys.lhs.size() && ok; ++i)
      ok = evaluate(sys.lhs[i], *sol, 1 << 20) == sys.rhs[i];
    run.check(ok, "planted system not solved (vars=" + std::to_string(vars) + ")");
  }
  return run.finish();
}

std::vector<std::string> suite_names() {
  return {"words", "finewilf", "boundary", "mcl", "tree", "l2", "ticadd2", "recover", "solve-demo"};
}

SuiteReport run_suite(const std::string& name, const SignaturePtr& sig, std::int64_t samples,
                      std::uint64_t seed, std::uint64_t budget) {
  if (name == "words") return check_words(sig, samples, seed);
  if (name == "finewilf") return check_finewilf(sig, samples, seed);
  if (name == "boundary") return check_boundary_lemmas(sig, samples, seed);
  if (name == "mcl") return check_mcl(sig, samples, seed);
  if (name == "tree") return check_tree_lemmas(sig, samples, seed);
  if (name == "l2") return check_l2(sig, samples, seed, budget);
  if (name == "ticadd2") return check_ticadd2(sig, samples, seed, budget);
  if (name == "recover") return check_recover(sig, samples, seed, budget);
  if (name == "solve-demo") return check_solver(sig, samples, seed);
  fail(Errc::UnknownSuite, "unknown suite '" + name + "'");
}

}  // namespace verba
