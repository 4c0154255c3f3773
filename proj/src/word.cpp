#include "verba/word.hpp"

#include <algorithm>
#include <sstream>

namespace verba {

void check_same_signature(const Word& u, const Word& v) {
  if (u.sig() == v.sig()) return;
  if (u.sig() && v.sig() && *u.sig() == *v.sig()) return;
  fail(Errc::SignatureMismatch, "words belong to different free products");
}

namespace {

const FactorGroup& factor_of(const SignaturePtr& sig, const Syllable& s) {
  return sig->factor(int(s.factor));
}

void check_syllable(const SignaturePtr& sig, const Syllable& s) {
  if (int(s.factor) >= sig->factor_count())
    fail(Errc::UnknownFactor, "syllable references unknown factor " + std::to_string(s.factor));
  if (int(s.letter) >= sig->factor(int(s.factor)).order())
    fail(Errc::LetterOutOfRange, "letter " + std::to_string(s.letter) + " out of range in factor " +
                                     sig->factor_name(int(s.factor)));
}

// Appends one valid syllable to a reduced buffer, merging/cancelling.
void push_reduced(const SignaturePtr& sig, std::vector<Syllable>& out, Syllable s) {
  if (s.letter == 0) return;
  if (!out.empty() && out.back().factor == s.factor) {
    Elt prod = factor_of(sig, s).mult(out.back().letter, s.letter);
    if (prod == 0)
      out.pop_back();
    else
      out.back().letter = prod;
    return;
  }
  out.push_back(s);
}

SignaturePtr pick_sig(const Word& u, const Word& v) { return u.sig() ? u.sig() : v.sig(); }

}  // namespace

Word Word::reduce(SignaturePtr sig, std::span<const Syllable> raw) {
  std::vector<Syllable> out;
  out.reserve(raw.size());
  for (const Syllable& s : raw) {
    check_syllable(sig, s);
    push_reduced(sig, out, s);
  }
  return Word(std::move(sig), std::move(out));
}

bool Word::shortlex_less(const Word& other) const {
  if (size() != other.size()) return size() < other.size();
  for (std::size_t i = 0; i < size(); ++i) {
    if (syls_[i].factor != other.syls_[i].factor) return syls_[i].factor < other.syls_[i].factor;
    if (syls_[i].letter != other.syls_[i].letter) return syls_[i].letter < other.syls_[i].letter;
  }
  return false;
}

Word multiply(const Word& u, const Word& v) {
  check_same_signature(u, v);
  SignaturePtr sig = pick_sig(u, v);
  std::size_t i = u.size();  // syllables of u kept
  std::size_t j = 0;         // syllables of v consumed
  std::optional<Syllable> seam;
  while (i > 0 && j < v.size()) {
    const Syllable& a = u[i - 1];
    const Syllable& b = v[j];
    if (a.factor != b.factor) break;
    Elt prod = factor_of(sig, a).mult(a.letter, b.letter);
    if (prod == 0) {
      --i;
      ++j;
      continue;
    }
    seam = Syllable{a.factor, prod};
    --i;
    ++j;
    break;
  }
  std::vector<Syllable> out;
  out.reserve(i + (seam ? 1 : 0) + (v.size() - j));
  out.insert(out.end(), u.syllables().begin(), u.syllables().begin() + std::ptrdiff_t(i));
  if (seam) out.push_back(*seam);
  out.insert(out.end(), v.syllables().begin() + std::ptrdiff_t(j), v.syllables().end());
  return Word::trusted(std::move(sig), std::move(out));
}

Word invert(const Word& u) {
  std::vector<Syllable> out;
  out.reserve(u.size());
  for (std::size_t i = u.size(); i-- > 0;) {
    const Syllable& s = u[i];
    out.push_back(Syllable{s.factor, factor_of(u.sig(), s).inv(s.letter)});
  }
  return Word::trusted(u.sig(), std::move(out));
}

Word conjugate(const Word& u, const Word& g) { return multiply(multiply(invert(g), u), g); }

Word commutator(const Word& x, const Word& y) {
  return multiply(multiply(invert(x), invert(y)), multiply(x, y));
}

std::pair<Word, Word> cyclic_reduce(const Word& w) {
  const SignaturePtr& sig = w.sig();
  // Two cursors over a scratch copy; a merged trailing syllable overwrites
  // in place, so each step is O(1).
  std::vector<Syllable> buf(w.syllables().begin(), w.syllables().end());
  std::size_t lo = 0;
  std::size_t hi = buf.size();  // exclusive
  std::vector<Syllable> stripped;
  while (hi - lo >= 2 && buf[lo].factor == buf[hi - 1].factor) {
    Syllable first = buf[lo];
    Elt prod = factor_of(sig, first).mult(buf[hi - 1].letter, first.letter);
    ++lo;
    --hi;
    if (prod != 0) {
      buf[hi] = Syllable{first.factor, prod};
      ++hi;
    }
    stripped.push_back(first);
  }
  std::vector<Syllable> mid(buf.begin() + std::ptrdiff_t(lo), buf.begin() + std::ptrdiff_t(hi));
  std::vector<Syllable> f;
  f.reserve(stripped.size());
  for (std::size_t i = stripped.size(); i-- > 0;) {
    const Syllable& s = stripped[i];
    f.push_back(Syllable{s.factor, factor_of(sig, s).inv(s.letter)});
  }
  return {Word::trusted(sig, std::move(mid)), Word::trusted(sig, std::move(f))};
}

std::int64_t central_length(const Word& w) { return std::int64_t(cyclic_reduce(w).first.size()); }

bool is_cyclically_reduced(const Word& w) {
  if (w.size() <= 1) return true;
  return w.front().factor != w.back().factor;
}

bool is_hyperbolic(const Word& w) { return central_length(w) >= 2; }

namespace {

// Smallest d dividing |w| with w == (prefix of length d)^(|w|/d).
std::size_t primitive_period(std::span<const Syllable> w) {
  const std::size_t n = w.size();
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    bool ok = true;
    for (std::size_t i = d; i < n && ok; ++i) ok = w[i] == w[i - d];
    if (ok) return d;
  }
  return n;
}

}  // namespace

bool is_simple(const Word& w) {
  if (w.size() < 2 || !is_cyclically_reduced(w)) return false;
  return primitive_period(w.syllables()) == w.size();
}

HypDecomposition hyperbolic_decompose(const Word& w) {
  auto [core, f] = cyclic_reduce(w);
  if (core.size() < 2) fail(Errc::NotHyperbolic, "word has central length < 2");
  std::size_t d = primitive_period(core.syllables());
  std::vector<Syllable> a(core.syllables().begin(), core.syllables().begin() + std::ptrdiff_t(d));
  return HypDecomposition{Word::trusted(w.sig(), std::move(a)), std::int64_t(core.size() / d),
                          std::move(f)};
}

std::int64_t radical_length(const Word& w) { return std::int64_t(hyperbolic_decompose(w).A.size()); }

Word reassemble(const HypDecomposition& d) {
  std::vector<Syllable> core;
  core.reserve(std::size_t(d.k) * d.A.size());
  for (std::int64_t r = 0; r < d.k; ++r)
    core.insert(core.end(), d.A.syllables().begin(), d.A.syllables().end());
  Word mid = Word::trusted(d.A.sig(), std::move(core));
  return multiply(multiply(invert(d.f), mid), d.f);
}

Word power(const Word& u, std::int64_t n) {
  if (n == 0) return Word::identity(u.sig());
  if (u.empty()) return u;
  auto [core, f] = cyclic_reduce(u);
  const SignaturePtr& sig = u.sig();
  std::uint64_t reps = n >= 0 ? std::uint64_t(n) : std::uint64_t(-(n + 1)) + 1;
  Word mid;
  if (core.size() == 1) {
    Elt e = factor_of(sig, core[0]).power(core[0].letter, n);
    std::vector<Syllable> m;
    if (e != 0) m.push_back(Syllable{core[0].factor, e});
    mid = Word::trusted(sig, std::move(m));
  } else {
    Word base = n >= 0 ? core : invert(core);
    std::vector<Syllable> m;
    m.reserve(std::size_t(reps) * base.size());
    for (std::uint64_t r = 0; r < reps; ++r)
      m.insert(m.end(), base.syllables().begin(), base.syllables().end());
    mid = Word::trusted(sig, std::move(m));
  }
  return multiply(multiply(invert(f), mid), f);
}

std::optional<Word> root(const Word& w, std::int64_t n) {
  HypDecomposition d = hyperbolic_decompose(w);
  if (n < 1) fail(Errc::InvalidOrder, "root index must be >= 1");
  if (d.k % n != 0) return std::nullopt;
  return reassemble(HypDecomposition{d.A, d.k / n, d.f});
}

Word centralizer_generator(const Word& w) {
  HypDecomposition d = hyperbolic_decompose(w);
  return reassemble(HypDecomposition{d.A, 1, d.f});
}

namespace {

Word rotation(const Word& w, std::size_t r) {
  std::vector<Syllable> out;
  out.reserve(w.size());
  out.insert(out.end(), w.syllables().begin() + std::ptrdiff_t(r), w.syllables().end());
  out.insert(out.end(), w.syllables().begin(), w.syllables().begin() + std::ptrdiff_t(r));
  return Word::trusted(w.sig(), std::move(out));
}

}  // namespace

std::optional<Word> are_conjugate(const Word& u, const Word& v) {
  check_same_signature(u, v);
  SignaturePtr sig = pick_sig(u, v);
  auto [cu, fu] = cyclic_reduce(u);
  auto [cv, fv] = cyclic_reduce(v);
  if (cu.empty() || cv.empty()) {
    if (cu.empty() && cv.empty()) return Word::identity(sig);
    return std::nullopt;
  }
  if (cu.size() == 1 || cv.size() == 1) {
    if (cu.size() != cv.size() || cu[0].factor != cv[0].factor) return std::nullopt;
    auto t = factor_of(sig, cu[0]).conjugator(cu[0].letter, cv[0].letter);
    if (!t) return std::nullopt;
    std::vector<Syllable> tw;
    if (*t != 0) tw.push_back(Syllable{cu[0].factor, *t});
    return multiply(multiply(invert(fu), Word::trusted(sig, std::move(tw))), fv);
  }
  if (cu.size() != cv.size()) return std::nullopt;
  std::optional<Word> best;
  for (std::size_t r = 0; r < cu.size(); ++r) {
    if (rotation(cu, r) != cv) continue;
    std::vector<Syllable> c1(cu.syllables().begin(), cu.syllables().begin() + std::ptrdiff_t(r));
    Word g = multiply(multiply(invert(fu), Word::trusted(sig, std::move(c1))), fv);
    if (!best || g.shortlex_less(*best)) best = std::move(g);
  }
  return best;
}

Word parse_word(SignaturePtr sig, const std::string& text) {
  std::istringstream in(text);
  std::string tok;
  std::vector<Syllable> raw;
  bool saw_one = false;
  while (in >> tok) {
    if (tok == "1") {
      saw_one = true;
      continue;
    }
    std::int64_t factor = -1;
    std::int64_t letter = 1;
    std::size_t colon = tok.find(':');
    if (colon != std::string::npos) {
      try {
        factor = std::stoll(tok.substr(0, colon));
        letter = std::stoll(tok.substr(colon + 1));
      } catch (const std::exception&) {
        fail(Errc::ParseError, "bad numeric syllable '" + tok + "'");
      }
    } else {
      std::size_t caret = tok.find('^');
      std::string name = tok.substr(0, caret == std::string::npos ? tok.size() : caret);
      factor = sig->factor_by_name(name);
      if (factor < 0) fail(Errc::ParseError, "unknown factor name '" + name + "' in '" + tok + "'");
      if (caret != std::string::npos) {
        try {
          letter = std::stoll(tok.substr(caret + 1));
        } catch (const std::exception&) {
          fail(Errc::ParseError, "bad exponent in '" + tok + "'");
        }
      }
    }
    if (factor < 0 || factor >= sig->factor_count())
      fail(Errc::UnknownFactor, "factor index out of range in '" + tok + "'");
    const FactorGroup& fg = sig->factor(int(factor));
    std::int64_t order = fg.order();
    std::int64_t idx = ((letter % order) + order) % order;
    raw.push_back(Syllable{std::uint16_t(factor), Elt(idx)});
  }
  (void)saw_one;
  return Word::reduce(std::move(sig), raw);
}

std::string format_word(const Word& w) {
  if (w.empty()) return "1";
  std::ostringstream out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out << ' ';
    const Syllable& s = w[i];
    if (s.factor < 26) {
      out << w.sig()->factor_name(int(s.factor));
      if (s.letter != 1) out << '^' << int(s.letter);
    } else {
      out << int(s.factor) << ':' << int(s.letter);
    }
  }
  return out.str();
}

}  // namespace verba
