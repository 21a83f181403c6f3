#include "basm/words.hpp"

#include <algorithm>
#include <cctype>

#include "basm/errors.hpp"

namespace basm {

char Letter::to_char() const {
  const char base = static_cast<char>('a' + generator());
  return sign() < 0 ? static_cast<char>(std::toupper(base)) : base;
}

std::optional<Letter> Letter::from_char(char c) {
  if (c >= 'a' && c <= 'z') return Letter(c - 'a', +1);
  if (c >= 'A' && c <= 'Z') return Letter(c - 'A', -1);
  return std::nullopt;
}

Word reduce(std::span<const Letter> letters) {
  Word out;
  out.letters_.reserve(letters.size());
  for (Letter l : letters) {
    if (!out.letters_.empty() && out.letters_.back().cancels(l)) {
      out.letters_.pop_back();
    } else {
      out.letters_.push_back(l);
    }
  }
  return out;
}

Word reduce(std::string_view text) {
  std::vector<Letter> raw;
  raw.reserve(text.size());
  for (char c : text) {
    auto l = Letter::from_char(c);
    if (!l) throw ConfigError("invalid letter '" + std::string(1, c) + "' in word \"" +
                              std::string(text) + "\"");
    raw.push_back(*l);
  }
  return reduce(raw);
}

Word Word::parse(std::string_view text) { return reduce(text); }

Word Word::inverse() const {
  Word out;
  out.letters_.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) out.letters_.push_back(it->inverse());
  return out;
}

Word Word::power(int m) const {
  const Word base = m < 0 ? inverse() : *this;
  std::vector<Letter> raw;
  raw.reserve(base.size() * static_cast<std::size_t>(std::abs(m)));
  for (int i = 0; i < std::abs(m); ++i) raw.insert(raw.end(), base.letters_.begin(), base.letters_.end());
  return reduce(raw);
}

int Word::min_rank() const {
  int r = 0;
  for (Letter l : letters_) r = std::max(r, l.generator() + 1);
  return r;
}

std::string Word::str() const {
  std::string s;
  s.reserve(letters_.size());
  for (Letter l : letters_) s.push_back(l.to_char());
  return s;
}

Word operator*(const Word& lhs, const Word& rhs) {
  std::vector<Letter> raw(lhs.letters_);
  raw.insert(raw.end(), rhs.letters_.begin(), rhs.letters_.end());
  return reduce(raw);
}

bool is_cyclically_reduced(const Word& w) {
  return w.size() < 2 || !w[0].cancels(w.back());
}

// ---------------------------------------------------------------------------

LetterOrder LetterOrder::standard(int rank) {
  LetterOrder ord;
  ord.position_.resize(static_cast<std::size_t>(2 * rank));
  for (int c = 0; c < 2 * rank; ++c) {
    ord.position_[static_cast<std::size_t>(c)] = c;
    ord.sequence_.push_back(Letter::from_code(c));
  }
  return ord;
}

LetterOrder LetterOrder::parse(std::string_view spec) {
  if (spec.size() < 4 || spec.size() % 2 != 0)
    throw ConfigError("letter order must list all 2*rank letters, got \"" + std::string(spec) + "\"");
  const int rank = static_cast<int>(spec.size() / 2);
  LetterOrder ord;
  ord.position_.assign(spec.size(), -1);
  for (std::size_t i = 0; i < spec.size(); ++i) {
    auto l = Letter::from_char(spec[i]);
    if (!l || l->generator() >= rank || ord.position_[static_cast<std::size_t>(l->code())] != -1)
      throw ConfigError("letter order \"" + std::string(spec) + "\" is not a permutation of the letters");
    ord.position_[static_cast<std::size_t>(l->code())] = static_cast<int>(i);
    ord.sequence_.push_back(*l);
  }
  return ord;
}

std::string LetterOrder::str() const {
  std::string s;
  for (Letter l : sequence_) s.push_back(l.to_char());
  return s;
}

bool shortlex_less(std::span<const Letter> lhs, std::span<const Letter> rhs,
                   const LetterOrder& ord) {
  if (lhs.size() != rhs.size()) return lhs.size() < rhs.size();
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    const int a = ord.position(lhs[i]);
    const int b = ord.position(rhs[i]);
    if (a != b) return a < b;
  }
  return false;
}

bool shortlex_less(const Word& lhs, const Word& rhs, const LetterOrder& ord) {
  return shortlex_less(lhs.letters(), rhs.letters(), ord);
}

// ---------------------------------------------------------------------------

BoundaryConfig::BoundaryConfig(int rank, std::vector<Word> boundary_words)
    : rank_(rank), words_(std::move(boundary_words)) {
  if (rank < 2) throw ConfigError("free-group rank must be at least 2");
  for (const Word& w : words_) {
    if (w.empty()) throw ConfigError("boundary words must be nontrivial");
    if (!is_cyclically_reduced(w))
      throw ConfigError("boundary word \"" + w.str() + "\" is not cyclically reduced");
    if (w.min_rank() > rank)
      throw ConfigError("boundary word \"" + w.str() + "\" uses a generator outside the rank");
  }
}

BoundaryConfig BoundaryConfig::preset(std::string_view name) {
  if (name == "pants") return BoundaryConfig(2, {Word::parse("a"), Word::parse("b"), Word::parse("BA")});
  if (name == "torus" || name == "schottky-he") return BoundaryConfig(2, {Word::parse("abAB")});
  if (name == "ab-pair") return BoundaryConfig(2, {Word::parse("a"), Word::parse("b")});
  throw ConfigError("unknown boundary preset \"" + std::string(name) + "\"");
}

// ---------------------------------------------------------------------------

ConeTypeId cone_type(const Word& w) {
  if (w.empty()) return {};
  return ConeTypeId{w.back()};
}

bool in_cone(const Word& w, const Word& eta) {
  return (w * eta).size() == w.size() + eta.size();
}

std::uint64_t reduced_word_count(int rank, int len) {
  if (len == 0) return 1;
  std::uint64_t n = static_cast<std::uint64_t>(2 * rank);
  for (int i = 1; i < len; ++i) n *= static_cast<std::uint64_t>(2 * rank - 1);
  return n;
}

void for_each_reduced(int rank, int max_len, const LetterOrder& ord,
                      const std::function<void(std::span<const Letter>)>& fn) {
  if (ord.rank() != rank) throw ConfigError("letter order rank does not match group rank");
  const auto& seq = ord.letters();
  const std::size_t alphabet = seq.size();
  std::vector<Letter> buf;
  std::vector<std::size_t> choice;
  for (int len = 0; len <= max_len; ++len) {
    if (len == 0) {
      fn({});
      continue;
    }
    // Odometer over positions; each position walks the alphabet in order,
    // skipping the letter that would cancel its predecessor.
    buf.assign(static_cast<std::size_t>(len), Letter{});
    choice.assign(static_cast<std::size_t>(len), 0);
    std::size_t depth = 0;
    while (true) {
      std::size_t& c = choice[depth];
      while (c < alphabet && depth > 0 && buf[depth - 1].cancels(seq[c])) ++c;
      if (c == alphabet) {
        if (depth == 0) break;
        --depth;
        ++choice[depth];
        continue;
      }
      buf[depth] = seq[c];
      if (depth + 1 == static_cast<std::size_t>(len)) {
        fn(buf);
        ++c;
      } else {
        ++depth;
        choice[depth] = 0;
      }
    }
  }
}

std::vector<Word> enumerate_reduced(int rank, int max_len, const LetterOrder& ord) {
  std::vector<Word> out;
  for_each_reduced(rank, max_len, ord, [&](std::span<const Letter> w) { out.push_back(reduce(w)); });
  return out;
}

std::vector<Word> enumerate_reduced(int rank, int max_len) {
  return enumerate_reduced(rank, max_len, LetterOrder::standard(rank));
}

// ---------------------------------------------------------------------------

namespace {

// Length of the common prefix of w with the right-infinite word period^inf.
std::size_t periodic_prefix(std::span<const Letter> w, const std::vector<Letter>& period) {
  std::size_t i = 0;
  while (i < w.size() && w[i] == period[i % period.size()]) ++i;
  return i;
}

// Length of the common suffix of w with the left-infinite word ^inf period.
std::size_t periodic_suffix(std::span<const Letter> w, const std::vector<Letter>& period) {
  const std::size_t n = w.size();
  const std::size_t m = period.size();
  std::size_t i = 0;
  while (i < n && w[n - 1 - i] == period[m - 1 - (i % m)]) ++i;
  return i;
}

bool is_power_of(std::span<const Letter> w, const std::vector<Letter>& forward,
                 const std::vector<Letter>& backward) {
  if (w.size() % forward.size() != 0) return false;
  return periodic_prefix(w, forward) == w.size() || periodic_prefix(w, backward) == w.size();
}

void append_power(std::vector<Letter>& out, const std::vector<Letter>& forward,
                  const std::vector<Letter>& backward, int m) {
  const auto& base = m < 0 ? backward : forward;
  for (int i = 0; i < std::abs(m); ++i) {
    for (Letter l : base) {
      if (!out.empty() && out.back().cancels(l)) {
        out.pop_back();
      } else {
        out.push_back(l);
      }
    }
  }
}

void append_reduced(std::vector<Letter>& out, std::span<const Letter> tail) {
  for (Letter l : tail) {
    if (!out.empty() && out.back().cancels(l)) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
}

}  // namespace

RedLexTester::RedLexTester(const BoundaryConfig& bc, const LetterOrder& ord) : bc_(bc), ord_(ord) {
  if (ord.rank() != bc.rank()) throw ConfigError("letter order rank does not match boundary rank");
  for (const Word& a : bc.words()) {
    Periodic p;
    p.forward.assign(a.letters().begin(), a.letters().end());
    const Word inv = a.inverse();
    p.backward.assign(inv.letters().begin(), inv.letters().end());
    periodic_.push_back(std::move(p));
  }
}

bool RedLexTester::window_search(std::span<const Letter> w, std::size_t p, std::size_t q) const {
  const Periodic& P = periodic_[p];
  const Periodic& Q = periodic_[q];
  // Cancellation at either junction is bounded by |w| plus the overlap of the
  // two periodic words, so powers beyond this window only lengthen the word.
  const std::size_t slack = w.size() + 2 * (P.forward.size() + Q.forward.size());
  const int mp = static_cast<int>(slack / P.forward.size()) + 1;
  const int mq = static_cast<int>(slack / Q.forward.size()) + 1;
  std::vector<Letter> u;
  for (int m = -mp; m <= mp; ++m) {
    for (int k = -mq; k <= mq; ++k) {
      if (m == 0 && k == 0) continue;
      u.clear();
      append_power(u, P.forward, P.backward, m);
      append_reduced(u, w);
      append_power(u, Q.forward, Q.backward, k);
      if (shortlex_less(u, w, ord_)) return false;
    }
  }
  return true;
}

bool RedLexTester::is_redlex(std::span<const Letter> w, std::size_t p, std::size_t q) const {
  const Periodic& P = periodic_[p];
  const Periodic& Q = periodic_[q];
  if (p == q && is_power_of(w, P.forward, P.backward)) return false;

  // alpha_p^m w with m > 0 cancels against a prefix of alpha_p^{-inf}; m < 0
  // against alpha_p^{+inf}. At most one of the two is nonzero for cyclically
  // reduced alpha. Same on the right with suffixes.
  const std::size_t left_pos_m = periodic_prefix(w, P.backward);
  const std::size_t left_neg_m = periodic_prefix(w, P.forward);
  const std::size_t right_pos_k = periodic_suffix(w, Q.backward);
  const std::size_t right_neg_k = periodic_suffix(w, Q.forward);
  const std::size_t lp = std::max(left_pos_m, left_neg_m);
  const std::size_t rs = std::max(right_pos_k, right_neg_k);

  if (lp + rs >= w.size()) return window_search(w, p, q);

  // Independent junctions: |alpha_p^m w alpha_q^k| = |w| + f(m) + g(k).
  if (2 * lp > P.forward.size() || 2 * rs > Q.forward.size()) return false;

  const bool left_tie = lp > 0 && 2 * lp == P.forward.size();
  const bool right_tie = rs > 0 && 2 * rs == Q.forward.size();
  if (!left_tie && !right_tie) return true;

  const auto& left_base = left_pos_m > 0 ? P.forward : P.backward;
  const auto& right_base = right_pos_k > 0 ? Q.forward : Q.backward;
  std::vector<Letter> u;
  u.reserve(w.size());
  for (int use_left = 0; use_left <= (left_tie ? 1 : 0); ++use_left) {
    for (int use_right = 0; use_right <= (right_tie ? 1 : 0); ++use_right) {
      if (!use_left && !use_right) continue;
      u.clear();
      std::size_t begin = 0;
      std::size_t end = w.size();
      if (use_left) {
        u.insert(u.end(), left_base.begin(), left_base.end() - static_cast<std::ptrdiff_t>(lp));
        begin = lp;
      }
      if (use_right) end -= rs;
      u.insert(u.end(), w.begin() + static_cast<std::ptrdiff_t>(begin),
               w.begin() + static_cast<std::ptrdiff_t>(end));
      if (use_right) u.insert(u.end(), right_base.begin() + static_cast<std::ptrdiff_t>(rs), right_base.end());
      if (shortlex_less(u, w, ord_)) return false;
    }
  }
  return true;
}

bool is_redlex(const Word& w, std::size_t p, std::size_t q, const BoundaryConfig& bc,
               const LetterOrder& ord) {
  return RedLexTester(bc, ord).is_redlex(w.letters(), p, q);
}

std::vector<Word> redlex_reps(std::size_t p, std::size_t q, const BoundaryConfig& bc,
                              const LetterOrder& ord, int max_len) {
  if (p >= bc.size() || q >= bc.size()) throw ConfigError("boundary index out of range");
  RedLexTester tester(bc, ord);
  std::vector<Word> out;
  for_each_reduced(bc.rank(), max_len, ord, [&](std::span<const Letter> w) {
    if (tester.is_redlex(w, p, q)) out.push_back(reduce(w));
  });
  return out;
}

}  // namespace basm

std::size_t std::hash<basm::Word>::operator()(const basm::Word& w) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (basm::Letter l : w.letters()) {
    h ^= static_cast<std::size_t>(l.code() + 1);
    h *= 1099511628211ull;
  }
  return h ^ w.size();
}
