#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "verba/group.hpp"

namespace verba {

/// One letter of a word: a nonidentity element of one factor.
struct Syllable {
  std::uint16_t factor;
  Elt letter;
  bool operator==(const Syllable&) const = default;
};

/// A reduced word of the free product: adjacent syllables lie in distinct
/// factors, letters are never the identity. The empty word is 1.
/// Words are immutable values; every operation returns a fresh word.
class Word {
 public:
  Word() = default;
  static Word identity(SignaturePtr sig) { return Word(std::move(sig), {}); }
  /// Builds the reduced form of an arbitrary raw syllable sequence.
  /// Identity letters in the input are allowed and dropped.
  static Word reduce(SignaturePtr sig, std::span<const Syllable> raw);

  const SignaturePtr& sig() const { return sig_; }
  std::span<const Syllable> syllables() const { return syls_; }
  std::size_t size() const { return syls_.size(); }
  bool empty() const { return syls_.empty(); }
  const Syllable& operator[](std::size_t i) const { return syls_[i]; }
  const Syllable& front() const { return syls_.front(); }
  const Syllable& back() const { return syls_.back(); }

  bool operator==(const Word& other) const { return syls_ == other.syls_; }
  bool operator!=(const Word& other) const { return !(*this == other); }
  /// Shortlex order (length, then factor id, then letter index).
  bool shortlex_less(const Word& other) const;

  /// Internal: wraps an already-reduced sequence without re-checking.
  static Word trusted(SignaturePtr sig, std::vector<Syllable> syls) {
    return Word(std::move(sig), std::move(syls));
  }

 private:
  Word(SignaturePtr sig, std::vector<Syllable> syls) : sig_(std::move(sig)), syls_(std::move(syls)) {}
  SignaturePtr sig_;
  std::vector<Syllable> syls_;
};

/// The unique presentation w = f^-1 . A^k o f of a hyperbolic element:
/// A simple, k >= 1, no interaction at the f^-1|A seam, at most a merge at
/// the A|f seam.
struct HypDecomposition {
  Word A;
  std::int64_t k = 0;
  Word f;
};

void check_same_signature(const Word& u, const Word& v);

Word multiply(const Word& u, const Word& v);
Word invert(const Word& u);
/// g^-1 u g.
Word conjugate(const Word& u, const Word& g);
Word power(const Word& u, std::int64_t n);
/// x^-1 y^-1 x y.
Word commutator(const Word& x, const Word& y);

inline std::int64_t length(const Word& w) { return std::int64_t(w.size()); }

/// w = f^-1 . core . f with core cyclically reduced (merge possible at the
/// core|f seam only).
std::pair<Word, Word> cyclic_reduce(const Word& w);
std::int64_t central_length(const Word& w);
bool is_cyclically_reduced(const Word& w);
bool is_hyperbolic(const Word& w);
bool is_simple(const Word& w);

HypDecomposition hyperbolic_decompose(const Word& w);
std::int64_t radical_length(const Word& w);
/// f^-1 . A^k o f reassembled as a reduced word.
Word reassemble(const HypDecomposition& d);

/// The unique h with h^n = w, when n divides the exponent of w.
std::optional<Word> root(const Word& w, std::int64_t n);
/// Generator of the centralizer <f^-1 A f> of a hyperbolic w.
Word centralizer_generator(const Word& w);
/// Witness g with g^-1 u g = v, or nullopt. Lexicographically shortest
/// conjugator discovered by the rotation scan.
std::optional<Word> are_conjugate(const Word& u, const Word& v);

/// Word literal syntax: whitespace-separated syllables "a^2 b c", where the
/// letter names factors in signature order and ^e selects the element
/// (default 1); "f:l" addresses factor f, letter l numerically; "1" is the
/// empty word. The input is reduced.
Word parse_word(SignaturePtr sig, const std::string& text);
std::string format_word(const Word& w);

}  // namespace verba
