#pragma once

// Representations of free groups into PGL(n, C): cached evaluation, batch
// word walks, fixed-point flags, complex length and the Schottky families.

#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "basm/matrices.hpp"
#include "basm/words.hpp"

namespace basm {

class Representation {
 public:
  /// Takes one image per generator; every image is rescaled to determinant 1
  /// and inverse images are computed. Throws ConfigError for singular or
  /// mis-sized input.
  Representation(int rank, std::vector<CMatrix> generators, std::string label = "");

  int rank() const { return rank_; }
  int n() const { return n_; }
  const std::string& label() const { return label_; }

  const CMatrix& image(Letter l) const { return images_[static_cast<std::size_t>(l.code())]; }
  const CMatrix& generator(int i) const { return images_[static_cast<std::size_t>(2 * i)]; }

  /// Memoized by prefix; safe to call concurrently.
  CMatrix evaluate(const Word& w) const;
  /// Plain left-to-right product, no caching.
  CMatrix product(std::span<const Letter> w) const;
  /// Second compound of the product, accumulated letter by letter so that
  /// it keeps its accuracy when the product itself is badly conditioned.
  CMatrix compound_product(std::span<const Letter> w) const;

  /// All generator images have imaginary parts below tol.
  bool is_real(double tol = 1e-12) const;
  /// Conjugate by s: g -> s g s^-1.
  Representation conjugated(const CMatrix& s) const;

 private:
  struct Cache {
    std::mutex mutex;
    std::unordered_map<Word, CMatrix> products;
  };

  int rank_;
  int n_;
  std::vector<CMatrix> images_;  // indexed by letter code
  std::string label_;
  std::shared_ptr<Cache> cache_;
};

struct FlagData {
  ProjLine plus_line;              // attracting eigenline (lambda_1)
  ProjLine minus_line;             // repelling eigenline (lambda_n)
  ProjHyperplane plus_hyperplane;  // left covector of lambda_n
  ProjHyperplane minus_hyperplane; // left covector of lambda_1
  Complex lambda_1;
  Complex lambda_n;
};

/// Flags of a matrix whose extreme eigenvalues are already known.
FlagData flags_for(const CMatrix& m, Complex lambda_1, Complex lambda_n);
/// Two-sided version: the repelling data come from the dominant eigenvalue
/// inv_lambda_1 of m_inv, a separately evaluated product for the inverse word.
/// The bottom of a long product is lost to rounding; this keeps it.
FlagData flags_for(const CMatrix& m, const CMatrix& m_inv, Complex lambda_1, Complex inv_lambda_1);
FlagData matrix_flags(const CMatrix& m, double tol = 1e-6);
FlagData matrix_flags(const CMatrix& m, const CMatrix& m_inv, double tol = 1e-6);
FlagData fixed_flags(const Representation& rep, const Word& gamma, double tol = 1e-6);

/// Principal log of lambda_1 / lambda_n.
Complex complex_length(const Representation& rep, const Word& gamma, double tol = 1e-6);

// --- Schottky families ---------------------------------------------------

/// Root of x^2 + L x + 1 = 0: the one with |x| < 1, or the one closest to
/// the hint. Throws BranchPointError at L^2 = 4.
Complex schottky_root(Complex L, std::optional<Complex> hint = std::nullopt);

CMatrix schottky_x(Complex L);
CMatrix schottky_y(Complex L, Complex root);

/// a -> X_L, b -> Y_L.
Representation schottky_gamma(Complex L, std::optional<Complex> root_hint = std::nullopt);
/// a -> X_L^2, b -> X_L Y_L^3.
Representation schottky_gamma_prime(Complex L, std::optional<Complex> root_hint = std::nullopt);

/// Symmetric-square embedding of a 2x2 matrix.
CMatrix iota3(const CMatrix& m);
Representation compose_iota(const Representation& rep);

// --- Batch walks -------------------------------------------------------------

struct WalkOptions {
  int min_len = 0;
  int max_len = 0;
  /// Also carry the second compound of every product of length up to
  /// compound_max_len (default: max_len).
  bool with_compound = false;
  int compound_max_len = -1;
  /// 0: hardware concurrency.
  unsigned threads = 0;
};

using WordVisitor = std::function<void(std::span<const Letter> word, const CMatrix& image,
                                       const CMatrix* compound)>;

/// Work units of a batch walk: unit 0 holds the words of length <= 1, each
/// further unit the subtree under one two-letter prefix, in order.
std::size_t walk_unit_count(int rank);

/// Depth-first walk of one unit. Within a unit, a word is visited before
/// its extensions and siblings follow the letter order.
void walk_unit(const Representation& rep, const LetterOrder& ord, const WalkOptions& opt,
               std::size_t unit, const WordVisitor& visit);

/// Runs fn(unit) for every unit on up to `threads` workers.
void run_units(std::size_t units, unsigned threads, const std::function<void(std::size_t)>& fn);

/// Walk every unit with its own copy of the sink; sinks come back in unit
/// order so merging them sequentially is deterministic.
template <class Sink>
std::vector<Sink> walk_words(const Representation& rep, const LetterOrder& ord, const WalkOptions& opt,
                             const Sink& proto) {
  const std::size_t units = walk_unit_count(rep.rank());
  std::vector<Sink> sinks(units, proto);
  run_units(units, opt.threads, [&](std::size_t u) {
    Sink& sink = sinks[u];
    walk_unit(rep, ord, opt, u, [&](std::span<const Letter> w, const CMatrix& m, const CMatrix* c) {
      sink(w, m, c);
    });
  });
  return sinks;
}

}  // namespace basm
