#include <doctest.h>

#include <random>
#include <set>

#include "basm/errors.hpp"
#include "basm/words.hpp"
#include "oracles.hpp"

using namespace basm;

namespace {

std::vector<std::string> strings(const std::vector<Word>& ws) {
  std::vector<std::string> out;
  for (const Word& w : ws) out.push_back(w.str());
  return out;
}

bool contains(const std::vector<Word>& ws, const std::string& s) {
  for (const Word& w : ws)
    if (w.str() == s) return true;
  return false;
}

const LetterOrder kStd = LetterOrder::standard(2);

}  // namespace

TEST_CASE("reduce cancels adjacent inverse pairs") {
  CHECK(reduce("aA").empty());
  CHECK(reduce("abBA").empty());
  CHECK(reduce("aBBa").str() == "aBBa");
  CHECK(reduce("").empty());
}

TEST_CASE("reduce is idempotent and agrees with the string oracle") {
  std::mt19937 rng(0);
  const std::string letters = "aAbBcC";
  for (int trial = 0; trial < 500; ++trial) {
    std::string raw;
    const int len = static_cast<int>(rng() % 20);
    for (int i = 0; i < len; ++i) raw.push_back(letters[rng() % letters.size()]);
    const Word w = reduce(raw);
    CHECK(w.str() == oracle::reduce(raw));
    CHECK(reduce(w.str()) == w);
    CHECK(w.size() == w.str().size());
  }
}

TEST_CASE("bad word text is a config error") { CHECK_THROWS_AS(Word::parse("ab1"), ConfigError); }

TEST_CASE("shortlex examples") {
  CHECK(shortlex_less(Word(), Word::parse("a"), kStd));
  CHECK(shortlex_less(Word::parse("a"), Word::parse("b"), kStd));
  CHECK(shortlex_less(Word::parse("ab"), Word::parse("aB"), kStd));
  CHECK_FALSE(shortlex_less(Word::parse("ab"), Word::parse("ab"), kStd));
}

TEST_CASE("shortlex is a strict total order on distinct words") {
  const auto words = enumerate_reduced(2, 3);
  for (const Word& x : words)
    for (const Word& y : words) {
      if (x == y) {
        CHECK_FALSE(shortlex_less(x, y, kStd));
      } else {
        CHECK(shortlex_less(x, y, kStd) != shortlex_less(y, x, kStd));
      }
    }
}

TEST_CASE("custom letter orders") {
  const LetterOrder ord = LetterOrder::parse("bBaA");
  CHECK(shortlex_less(Word::parse("b"), Word::parse("a"), ord));
  CHECK(ord.rank() == 2);
  CHECK_THROWS_AS(LetterOrder::parse("aab"), ConfigError);
}

TEST_CASE("reduced word counts") {
  CHECK(enumerate_reduced(2, 1).size() == 1 + 4);
  CHECK(enumerate_reduced(2, 2).size() == 1 + 4 + 12);
  CHECK(enumerate_reduced(2, 3).size() == 1 + 4 + 12 + 36);
  for (int rank = 2; rank <= 3; ++rank)
    for (int n = 1; n <= 6; ++n) {
      std::uint64_t expect = 2 * rank;
      for (int i = 1; i < n; ++i) expect *= 2 * rank - 1;
      CHECK(reduced_word_count(rank, n) == expect);
    }
  // Every word exactly once.
  const auto words = enumerate_reduced(2, 5);
  std::set<std::string> seen;
  for (const Word& w : words) seen.insert(w.str());
  CHECK(seen.size() == words.size());
  const auto brute = oracle::reduced_words(2, 5);
  CHECK(std::set<std::string>(brute.begin(), brute.end()) == seen);
}

TEST_CASE("cone types") {
  CHECK(cone_type(Word()).is_identity());
  CHECK(cone_type(Word::parse("ab")).last == Letter(1, 1));
  CHECK(cone_type(Word::parse("aB")).last == Letter(1, -1));
  std::set<int> ids;
  for (const Word& w : enumerate_reduced(2, 3)) ids.insert(cone_type(w).index());
  CHECK(ids.size() == 5);
}

TEST_CASE("cone membership") {
  CHECK(in_cone(Word::parse("a"), Word::parse("b")));
  CHECK_FALSE(in_cone(Word::parse("a"), Word::parse("Ab")));
  for (const Word& eta : enumerate_reduced(2, 3)) CHECK(in_cone(Word(), eta));
}

TEST_CASE("RedLex membership in the pants configuration") {
  const BoundaryConfig bc = BoundaryConfig::preset("pants");
  CHECK_FALSE(is_redlex(Word::parse("ab"), 0, 1, bc, kStd));
  CHECK(is_redlex(Word(), 0, 1, bc, kStd));
  CHECK(is_redlex(Word::parse("BA"), 0, 1, bc, kStd));
  CHECK_FALSE(is_redlex(Word::parse("a"), 0, 0, bc, kStd));
  CHECK_FALSE(is_redlex(Word(), 0, 0, bc, kStd));
}

TEST_CASE("redlex_reps examples") {
  const BoundaryConfig bc = BoundaryConfig::preset("pants");
  CHECK(strings(redlex_reps(0, 1, bc, kStd, 0)) == std::vector<std::string>{""});
  CHECK(redlex_reps(0, 0, bc, kStd, 0).empty());
  CHECK(contains(redlex_reps(0, 1, bc, kStd, 2), "BA"));
}

TEST_CASE("redlex_reps is ShortLex sorted without repeats") {
  const BoundaryConfig bc = BoundaryConfig::preset("torus");
  const auto reps = redlex_reps(0, 0, bc, kStd, 6);
  for (std::size_t i = 1; i < reps.size(); ++i) CHECK(shortlex_less(reps[i - 1], reps[i], kStd));
}

TEST_CASE("double coset partition agrees with brute force") {
  struct Case {
    const char* preset;
    const char* order;
  };
  for (const Case c : {Case{"pants", "aAbB"}, Case{"torus", "aAbB"}, Case{"ab-pair", "aAbB"}, Case{"pants", "BbAa"}}) {
    CAPTURE(c.preset);
    CAPTURE(c.order);
    const BoundaryConfig bc = BoundaryConfig::preset(c.preset);
    const LetterOrder ord = LetterOrder::parse(c.order);
    std::vector<std::string> boundary;
    for (const Word& w : bc.words()) boundary.push_back(w.str());
    for (std::size_t p = 0; p < bc.size(); ++p)
      for (std::size_t q = 0; q < bc.size(); ++q) {
        const auto got = strings(redlex_reps(p, q, bc, ord, 6));
        const auto expect = oracle::redlex_by_brute_force(boundary, p, q, c.order, 6);
        CHECK(std::set<std::string>(got.begin(), got.end()) == expect);
        CHECK(got.size() == expect.size());
      }
  }
}

TEST_CASE("cancellation against boundary powers is eventually constant") {
  const BoundaryConfig bc = BoundaryConfig::preset("pants");
  for (std::size_t q = 0; q < bc.size(); ++q)
    for (const Word& w : redlex_reps(0, q, bc, kStd, 5)) {
      std::vector<long> overlap;
      for (int m = 1; m <= 5; ++m) {
        const Word am = bc[q].power(m);
        overlap.push_back(static_cast<long>(w.size() + am.size()) - static_cast<long>((w * am).size()));
      }
      for (std::size_t i = 2; i < overlap.size(); ++i) CHECK(overlap[i] == overlap[1]);
    }
}

TEST_CASE("boundary configs reject bad input") {
  CHECK_THROWS_AS(BoundaryConfig::preset("nonsense"), ConfigError);
  CHECK_THROWS_AS(BoundaryConfig(2, {Word()}), ConfigError);
}
