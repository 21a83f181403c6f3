#pragma once

// Free-group word combinatorics: reduction, ShortLex, enumeration, cone types
// and RedLex double-coset representatives.

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace basm {

/// A generator or its inverse. Encoded as 2*generator + (inverse ? 1 : 0), so
/// that codes of a rank-r group fill [0, 2r).
class Letter {
 public:
  constexpr Letter() = default;
  constexpr Letter(int generator, int sign)
      : code_(static_cast<std::uint8_t>(2 * generator + (sign < 0 ? 1 : 0))) {}

  static constexpr Letter from_code(int code) {
    Letter l;
    l.code_ = static_cast<std::uint8_t>(code);
    return l;
  }

  constexpr int code() const { return code_; }
  constexpr int generator() const { return code_ >> 1; }
  constexpr int sign() const { return (code_ & 1) ? -1 : 1; }
  constexpr Letter inverse() const { return from_code(code_ ^ 1); }
  constexpr bool cancels(Letter other) const { return (code_ ^ 1) == other.code_; }

  /// 'a'..'z' for generators, 'A'..'Z' for inverses.
  char to_char() const;
  static std::optional<Letter> from_char(char c);

  friend constexpr bool operator==(Letter, Letter) = default;

 private:
  std::uint8_t code_ = 0;
};

/// An immutable reduced word. Every constructor reduces its input.
class Word {
 public:
  Word() = default;

  /// Parses "aBba" style text; throws ConfigError on foreign characters.
  static Word parse(std::string_view text);

  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  Letter back() const { return letters_.back(); }
  std::span<const Letter> letters() const { return letters_; }

  Word inverse() const;
  Word power(int m) const;
  /// Largest generator index + 1 (0 for the empty word).
  int min_rank() const;

  /// Empty string for the identity.
  std::string str() const;

  friend Word operator*(const Word& lhs, const Word& rhs);
  friend bool operator==(const Word&, const Word&) = default;

  friend Word reduce(std::span<const Letter> letters);

 private:
  std::vector<Letter> letters_;
};

Word reduce(std::span<const Letter> letters);
/// Reduction of a raw letter string such as "abBA".
Word reduce(std::string_view text);

bool is_cyclically_reduced(const Word& w);

/// Total order on the 2*rank letters.
class LetterOrder {
 public:
  /// a < A < b < B < ...
  static LetterOrder standard(int rank);
  /// Parses an order string listing every letter once, e.g. "aAbB".
  static LetterOrder parse(std::string_view spec);

  int rank() const { return static_cast<int>(position_.size() / 2); }
  int position(Letter l) const { return position_[l.code()]; }
  /// Letters in increasing order.
  const std::vector<Letter>& letters() const { return sequence_; }
  std::string str() const;

 private:
  std::vector<int> position_;
  std::vector<Letter> sequence_;
};

bool shortlex_less(std::span<const Letter> lhs, std::span<const Letter> rhs,
                   const LetterOrder& ord);
bool shortlex_less(const Word& lhs, const Word& rhs, const LetterOrder& ord);

/// Boundary classes alpha_1..alpha_k of a surface group presented as a free group.
class BoundaryConfig {
 public:
  BoundaryConfig(int rank, std::vector<Word> boundary_words);

  /// Named presets: "pants" (a, b, BA), "torus" / "schottky-he" (abAB),
  /// "ab-pair" (a, b). Throws ConfigError for unknown names.
  static BoundaryConfig preset(std::string_view name);

  int rank() const { return rank_; }
  std::size_t size() const { return words_.size(); }
  const Word& operator[](std::size_t j) const { return words_[j]; }
  const std::vector<Word>& words() const { return words_; }

 private:
  int rank_;
  std::vector<Word> words_;
};

/// Cone type of a word in a free group: the identity cone or the cone of a
/// last letter. A rank-r group has 2r+1 of them.
struct ConeTypeId {
  std::optional<Letter> last;

  bool is_identity() const { return !last.has_value(); }
  /// 0 for the identity cone, 1 + letter code otherwise.
  int index() const { return last ? 1 + last->code() : 0; }
  friend bool operator==(const ConeTypeId&, const ConeTypeId&) = default;
};

ConeTypeId cone_type(const Word& w);
/// True iff |w * eta| = |w| + |eta|.
bool in_cone(const Word& w, const Word& eta);

/// Number of reduced words of length exactly len in a rank-r free group.
std::uint64_t reduced_word_count(int rank, int len);

/// Calls fn on every reduced word of length <= max_len, in ShortLex order.
void for_each_reduced(int rank, int max_len, const LetterOrder& ord,
                      const std::function<void(std::span<const Letter>)>& fn);
std::vector<Word> enumerate_reduced(int rank, int max_len);
std::vector<Word> enumerate_reduced(int rank, int max_len, const LetterOrder& ord);

/// Precomputed boundary data for repeated RedLex tests.
class RedLexTester {
 public:
  RedLexTester(const BoundaryConfig& bc, const LetterOrder& ord);

  /// True iff w is the ShortLex-least element of H_p w H_q and the coset is
  /// nontrivial (for p == q, w must not be a power of alpha_p).
  bool is_redlex(std::span<const Letter> w, std::size_t p, std::size_t q) const;

  const BoundaryConfig& boundary() const { return bc_; }
  const LetterOrder& order() const { return ord_; }

 private:
  struct Periodic {
    std::vector<Letter> forward;   // alpha
    std::vector<Letter> backward;  // alpha^{-1}
  };

  bool window_search(std::span<const Letter> w, std::size_t p, std::size_t q) const;

  BoundaryConfig bc_;
  LetterOrder ord_;
  std::vector<Periodic> periodic_;
};

bool is_redlex(const Word& w, std::size_t p, std::size_t q, const BoundaryConfig& bc,
               const LetterOrder& ord);

/// RedLex representatives of the nontrivial double cosets H_p w H_q with
/// |w| <= max_len, ShortLex-sorted.
std::vector<Word> redlex_reps(std::size_t p, std::size_t q, const BoundaryConfig& bc,
                              const LetterOrder& ord, int max_len);

}  // namespace basm

template <>
struct std::hash<basm::Word> {
  std::size_t operator()(const basm::Word& w) const noexcept;
};
