#include "mve/words.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <limits>
#include <sstream>

#include "mve/error.hpp"

namespace mve {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::InvalidInverse: return "InvalidInverse";
    case ErrorCode::UnknownVertex: return "UnknownVertex";
    case ErrorCode::TrivialInput: return "TrivialInput";
    case ErrorCode::InvalidGraph: return "InvalidGraph";
    case ErrorCode::InvalidGluData: return "InvalidGluData";
    case ErrorCode::RankMismatch: return "RankMismatch";
    case ErrorCode::TubularizationInconsistent: return "TubularizationInconsistent";
    case ErrorCode::NotCollapsible: return "NotCollapsible";
    case ErrorCode::NotATree: return "NotATree";
    case ErrorCode::InvalidGraphOfGroups: return "InvalidGraphOfGroups";
    case ErrorCode::ResourceLimit: return "ResourceLimit";
    case ErrorCode::DegenerateProfile: return "DegenerateProfile";
    case ErrorCode::NotCoreGraph: return "NotCoreGraph";
    case ErrorCode::DegenerateRank: return "DegenerateRank";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

namespace {

// Appends x to a reduced buffer, cancelling against the last letter.
inline void push_reduced(std::vector<Letter>& buf, Letter x) {
  if (!buf.empty() && buf.back() == -x) {
    buf.pop_back();
  } else {
    buf.push_back(x);
  }
}

}  // namespace

Word reduce(std::span<const Letter> letters) { return Word(letters); }

Word::Word(std::span<const Letter> letters) {
  letters_.reserve(letters.size());
  for (Letter x : letters) {
    if (x == 0) throw Error(ErrorCode::IndexOutOfRange, "letter 0");
    push_reduced(letters_, x);
  }
}

Word::Word(std::initializer_list<Letter> letters)
    : Word(std::span<const Letter>(letters.begin(), letters.size())) {}

Word Word::generator_power(int index, long k) {
  Word w;
  w.letters_.assign(static_cast<std::size_t>(k < 0 ? -k : k), k < 0 ? -index : index);
  return w;
}

int Word::max_index() const {
  int m = 0;
  for (Letter x : letters_) m = std::max(m, generator_index(x));
  return m;
}

Word Word::inverse() const {
  Word w;
  w.letters_.resize(letters_.size());
  std::transform(letters_.rbegin(), letters_.rend(), w.letters_.begin(),
                 [](Letter x) { return -x; });
  return w;
}

Word Word::pow(long k) const {
  Word base = k < 0 ? inverse() : *this;
  Word out;
  for (long i = 0; i < (k < 0 ? -k : k); ++i) out *= base;
  return out;
}

Word& Word::operator*=(const Word& rhs) {
  for (Letter x : rhs.letters_) push_reduced(letters_, x);
  return *this;
}

int letter_rank(Letter x) { return 2 * generator_index(x) - (x > 0 ? 1 : 0); }

bool shortlex_less(const Word& u, const Word& v) {
  if (u.size() != v.size()) return u.size() < v.size();
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] != v[i]) return letter_rank(u[i]) < letter_rank(v[i]);
  }
  return false;
}

std::string generator_name(int index) {
  if (index >= 1 && index <= 26) return std::string(1, static_cast<char>('a' + index - 1));
  return "g" + std::to_string(index);
}

std::string format_word(const Word& w) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += generator_name(generator_index(w[i]));
    if (w[i] < 0) out += '-';
  }
  return out;
}

Word parse_word(std::string_view text) {
  std::vector<Letter> letters;
  std::istringstream in{std::string(text)};
  std::string token;
  while (in >> token) {
    bool inverse = false;
    if (token.back() == '-') {
      inverse = true;
      token.pop_back();
    }
    int index = 0;
    if (token.size() == 1 && std::islower(static_cast<unsigned char>(token[0]))) {
      index = token[0] - 'a' + 1;
    } else if (token.size() > 1 && token[0] == 'g') {
      auto [ptr, ec] = std::from_chars(token.data() + 1, token.data() + token.size(), index);
      if (ec != std::errc() || ptr != token.data() + token.size() || index < 1) index = 0;
    }
    if (index == 0) throw Error(ErrorCode::ParseError, "bad generator token '" + token + "'");
    letters.push_back(inverse ? -index : index);
  }
  return Word(letters);
}

std::size_t WordHash::operator()(const Word& w) const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (Letter x : w.letters()) {
    h ^= static_cast<std::size_t>(static_cast<unsigned>(x));
    h *= 0x100000001b3ULL;
  }
  return h;
}

// ---------------------------------------------------------------------------

namespace {

Word substitute(std::span<const Word> images, const Word& w) {
  std::vector<Letter> buf;
  for (Letter x : w.letters()) {
    const int i = generator_index(x);
    if (i > static_cast<int>(images.size())) {
      throw Error(ErrorCode::IndexOutOfRange,
                  "generator " + std::to_string(i) + " exceeds rank " +
                      std::to_string(images.size()));
    }
    const auto& img = images[i - 1].letters();
    if (x > 0) {
      for (Letter y : img) push_reduced(buf, y);
    } else {
      for (auto it = img.rbegin(); it != img.rend(); ++it) push_reduced(buf, -*it);
    }
  }
  return Word(buf);
}

void check_words(int rank, const std::vector<Word>& words, const char* what) {
  if (static_cast<int>(words.size()) != rank) {
    throw Error(ErrorCode::IndexOutOfRange,
                std::string(what) + " has " + std::to_string(words.size()) +
                    " entries, rank is " + std::to_string(rank));
  }
  for (const auto& w : words) {
    if (w.max_index() > rank) {
      throw Error(ErrorCode::IndexOutOfRange,
                  std::string(what) + " mentions a generator beyond rank " +
                      std::to_string(rank));
    }
  }
}

}  // namespace

FreeAut::FreeAut(Unchecked, int rank, std::vector<Word> images,
                 std::vector<Word> inverse_images)
    : rank_(rank), images_(std::move(images)), inverse_images_(std::move(inverse_images)) {}

FreeAut::FreeAut(int rank, std::vector<Word> images, std::vector<Word> inverse_images)
    : rank_(rank), images_(std::move(images)), inverse_images_(std::move(inverse_images)) {
  if (rank < 1) throw Error(ErrorCode::IndexOutOfRange, "rank must be positive");
  check_words(rank_, images_, "images");
  check_words(rank_, inverse_images_, "inverse_images");
  for (int i = 1; i <= rank_; ++i) {
    const Word x = Word::generator(i);
    if (substitute(inverse_images_, substitute(images_, x)) != x ||
        substitute(images_, substitute(inverse_images_, x)) != x) {
      throw Error(ErrorCode::InvalidInverse,
                  "declared inverse fails on generator " + generator_name(i));
    }
  }
}

FreeAut FreeAut::identity(int rank) {
  std::vector<Word> basis;
  for (int i = 1; i <= rank; ++i) basis.push_back(Word::generator(i));
  return FreeAut(Unchecked{}, rank, basis, basis);
}

FreeAut FreeAut::inverse() const { return FreeAut(Unchecked{}, rank_, inverse_images_, images_); }

Word apply_images(std::span<const Word> images, const Word& w) { return substitute(images, w); }

Word apply(const FreeAut& aut, const Word& w) { return substitute(aut.images(), w); }

Word apply_inverse(const FreeAut& aut, const Word& w) {
  return substitute(aut.inverse_images(), w);
}

FreeAut compose(const FreeAut& f, const FreeAut& g) {
  if (f.rank() != g.rank()) throw Error(ErrorCode::RankMismatch, "compose");
  std::vector<Word> images, inverses;
  for (int i = 0; i < f.rank(); ++i) {
    images.push_back(substitute(f.images_, g.images_[i]));
    inverses.push_back(substitute(g.inverse_images_, f.inverse_images_[i]));
  }
  return FreeAut(FreeAut::Unchecked{}, f.rank(), std::move(images), std::move(inverses));
}

FreeAut power(const FreeAut& aut, long k) {
  const FreeAut base = k < 0 ? aut.inverse() : aut;
  FreeAut out = FreeAut::identity(aut.rank());
  FreeAut sq = base;
  for (unsigned long n = static_cast<unsigned long>(k < 0 ? -k : k); n; n >>= 1) {
    if (n & 1) out = compose(out, sq);
    if (n > 1) sq = compose(sq, sq);
  }
  return out;
}

FreeAut conjugate_by(const FreeAut& aut, const Word& g) {
  if (g.max_index() > aut.rank()) throw Error(ErrorCode::IndexOutOfRange, "conjugator");
  const Word gi = g.inverse();
  std::vector<Word> images, inverses;
  for (int i = 0; i < aut.rank(); ++i) {
    images.push_back(g * aut.images_[i] * gi);
    // (ad_g o F)^-1 = F^-1 o ad_{g^-1} : x -> F^-1(g)^-1 F^-1(x) F^-1(g)
    const Word h = substitute(aut.inverse_images_, g);
    inverses.push_back(h.inverse() * aut.inverse_images_[i] * h);
  }
  return FreeAut(FreeAut::Unchecked{}, aut.rank(), std::move(images), std::move(inverses));
}

std::string_view to_string(GrowthClass c) {
  switch (c) {
    case GrowthClass::Bounded: return "Bounded";
    case GrowthClass::Linear: return "Linear";
    case GrowthClass::PolynomialOrUnknown: return "PolynomialOrUnknown";
    case GrowthClass::ExponentialHeuristic: return "ExponentialHeuristic";
  }
  return "?";
}

GrowthProfile growth_profile(const FreeAut& aut, int iterations) {
  if (iterations < 4) throw Error(ErrorCode::IndexOutOfRange, "growth_profile needs K >= 4");
  GrowthProfile profile;
  std::vector<Word> current;
  for (int i = 1; i <= aut.rank(); ++i) current.push_back(Word::generator(i));
  for (int k = 1; k <= iterations; ++k) {
    std::size_t longest = 0;
    for (auto& w : current) {
      w = apply(aut, w);
      longest = std::max(longest, w.size());
    }
    profile.lengths.push_back(longest);
  }

  const auto& L = profile.lengths;
  const std::size_t K = L.size();
  double witness = std::numeric_limits<double>::infinity();
  for (std::size_t k = K - 3; k < K; ++k) {
    witness = std::min(witness, static_cast<double>(L[k]) / static_cast<double>(L[k - 1]));
  }
  profile.witness_ratio = witness;

  // L is 1-indexed in the rule; L[k-1] holds L_k.
  auto second_difference_vanishes = [&] {
    const std::size_t first = std::max<std::size_t>((K + 1) / 2, 3);
    for (std::size_t k = first; k <= K; ++k) {
      const long d = static_cast<long>(L[k - 1]) - 2 * static_cast<long>(L[k - 2]) +
                     static_cast<long>(L[k - 3]);
      if (d != 0) return false;
    }
    return true;
  };

  if (L[K - 1] == L[0]) {
    profile.classification = GrowthClass::Bounded;
  } else if (second_difference_vanishes()) {
    profile.classification = GrowthClass::Linear;
  } else if (witness > kExponentialRatioThreshold) {
    profile.classification = GrowthClass::ExponentialHeuristic;
  } else {
    profile.classification = GrowthClass::PolynomialOrUnknown;
  }
  return profile;
}

}  // namespace mve
