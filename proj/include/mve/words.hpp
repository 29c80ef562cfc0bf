#pragma once

// Free group words and automorphisms.
//
// A letter is a nonzero int: +i is the i-th basis element (1-based), -i its
// inverse.  A Word is always freely reduced.

#include <compare>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mve {

using Letter = int;

inline int generator_index(Letter x) { return x < 0 ? -x : x; }

class Word {
 public:
  Word() = default;

  // Freely reduces the input.
  explicit Word(std::span<const Letter> letters);
  Word(std::initializer_list<Letter> letters);

  static Word generator(int index) { return Word{index}; }
  // x_index^k.
  static Word generator_power(int index, long k);

  const std::vector<Letter>& letters() const noexcept { return letters_; }
  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  int max_index() const;

  Word inverse() const;
  Word pow(long k) const;

  Word& operator*=(const Word& rhs);
  friend Word operator*(Word lhs, const Word& rhs) { return lhs *= rhs; }

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word&, const Word&) = default;

 private:
  std::vector<Letter> letters_;
};

// Free reduction of an arbitrary letter sequence.
Word reduce(std::span<const Letter> letters);

// Shortlex order with a < a^-1 < b < b^-1 < ...
bool shortlex_less(const Word& u, const Word& v);
int letter_rank(Letter x);

// "a b a-" style formatting; generators beyond z print as g27, g28, ...
std::string format_word(const Word& w);
Word parse_word(std::string_view text);
std::string generator_name(int index);

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept;
};

class FreeAut {
 public:
  // Throws IndexOutOfRange on bad sizes or letters and InvalidInverse if the
  // declared inverse does not compose to the identity on the basis.
  FreeAut(int rank, std::vector<Word> images, std::vector<Word> inverse_images);

  static FreeAut identity(int rank);

  int rank() const noexcept { return rank_; }
  const std::vector<Word>& images() const noexcept { return images_; }
  const std::vector<Word>& inverse_images() const noexcept {
    return inverse_images_;
  }
  const Word& image(int index) const { return images_.at(index - 1); }

  FreeAut inverse() const;

  friend bool operator==(const FreeAut&, const FreeAut&) = default;

 private:
  struct Unchecked {};
  FreeAut(Unchecked, int rank, std::vector<Word> images,
          std::vector<Word> inverse_images);

  friend FreeAut compose(const FreeAut&, const FreeAut&);
  friend FreeAut conjugate_by(const FreeAut&, const Word&);

  int rank_;
  std::vector<Word> images_;
  std::vector<Word> inverse_images_;
};

// Substitutes images[i-1] for generator i; the result is reduced.
Word apply_images(std::span<const Word> images, const Word& w);

// Substitutes images into w; the result is reduced.
Word apply(const FreeAut& aut, const Word& w);
// Applies the declared inverse.
Word apply_inverse(const FreeAut& aut, const Word& w);

// (f o g)(x) = f(g(x)).
FreeAut compose(const FreeAut& f, const FreeAut& g);
FreeAut power(const FreeAut& aut, long k);
// ad_g o aut : x -> g aut(x) g^-1.
FreeAut conjugate_by(const FreeAut& aut, const Word& g);

enum class GrowthClass { Bounded, Linear, PolynomialOrUnknown, ExponentialHeuristic };

std::string_view to_string(GrowthClass c);

struct GrowthProfile {
  std::vector<std::size_t> lengths;  // lengths[k-1] = max_x |aut^k(x)|
  GrowthClass classification = GrowthClass::PolynomialOrUnknown;
  double witness_ratio = 0.0;  // min of the last three ratios L_k / L_{k-1}
};

inline constexpr double kExponentialRatioThreshold = 1.05;

// K >= 4.
GrowthProfile growth_profile(const FreeAut& aut, int iterations);

}  // namespace mve
