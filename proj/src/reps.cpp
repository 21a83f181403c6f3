#include "basm/reps.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <exception>
#include <thread>

#include "basm/errors.hpp"

namespace basm {

Representation::Representation(int rank, std::vector<CMatrix> generators, std::string label)
    : rank_(rank), label_(std::move(label)), cache_(std::make_shared<Cache>()) {
  if (rank < 2) throw ConfigError("representation rank must be at least 2");
  if (static_cast<int>(generators.size()) != rank)
    throw ConfigError("expected " + std::to_string(rank) + " generator images, got " +
                      std::to_string(generators.size()));
  n_ = generators.front().n();
  if (n_ < 2 || n_ > 8) throw ConfigError("matrix dimension must lie in [2, 8]");
  for (CMatrix& g : generators) {
    if (g.n() != n_) throw ConfigError("generator images have different dimensions");
    const Complex d = g.det();
    if (!(std::abs(d) > 1e-300) || !std::isfinite(std::abs(d)))
      throw ConfigError("generator image is singular");
    const CMatrix lifted = g.det1_lift();
    const CMatrix inv = lifted.inverse();
    if (max_abs_diff(lifted * inv, CMatrix::identity(n_)) > 1e-10 * std::max(1.0, lifted.max_abs() * inv.max_abs()))
      throw ConfigError("generator image is numerically singular");
    images_.push_back(lifted);
    images_.push_back(inv);
  }
}

CMatrix Representation::product(std::span<const Letter> w) const {
  CMatrix m = CMatrix::identity(n_);
  CMatrix tmp(n_);
  for (Letter l : w) {
    multiply_into(m, image(l), tmp);
    std::swap(m, tmp);
  }
  return m;
}

CMatrix Representation::compound_product(std::span<const Letter> w) const {
  const int k = n_ * (n_ - 1) / 2;
  CMatrix m = CMatrix::identity(k);
  CMatrix tmp(k);
  for (Letter l : w) {
    multiply_into(m, compound2(image(l)), tmp);
    std::swap(m, tmp);
  }
  return m;
}

CMatrix Representation::evaluate(const Word& w) const {
  if (w.empty()) return CMatrix::identity(n_);
  if (w.size() == 1) return image(w[0]);
  {
    std::lock_guard lock(cache_->mutex);
    auto it = cache_->products.find(w);
    if (it != cache_->products.end()) return it->second;
  }
  const auto letters = w.letters();
  const Word prefix = reduce(letters.first(letters.size() - 1));
  const CMatrix value = evaluate(prefix) * image(w.back());
  std::lock_guard lock(cache_->mutex);
  return cache_->products.emplace(w, value).first->second;
}

bool Representation::is_real(double tol) const {
  return std::all_of(images_.begin(), images_.end(), [&](const CMatrix& m) { return m.is_real(tol); });
}

Representation Representation::conjugated(const CMatrix& s) const {
  const CMatrix s_inv = s.inverse();
  std::vector<CMatrix> gens;
  for (int i = 0; i < rank_; ++i) gens.push_back(s * generator(i) * s_inv);
  return Representation(rank_, std::move(gens), label_ + " (conjugated)");
}

// ---------------------------------------------------------------------------

FlagData flags_for(const CMatrix& m, Complex lambda_1, Complex lambda_n) {
  FlagData f;
  f.lambda_1 = lambda_1;
  f.lambda_n = lambda_n;
  const CMatrix mt = m.transpose();
  f.plus_line = ProjLine(right_eigenvector(m, lambda_1));
  f.minus_line = ProjLine(right_eigenvector(m, lambda_n));
  f.plus_hyperplane = ProjHyperplane(right_eigenvector(mt, lambda_n));
  f.minus_hyperplane = ProjHyperplane(right_eigenvector(mt, lambda_1));
  if (std::abs(pair(f.plus_hyperplane, f.minus_line)) < 1e-10 ||
      std::abs(pair(f.minus_hyperplane, f.plus_line)) < 1e-10)
    throw TransversalityFailure("attracting and repelling flags are not transverse");
  return f;
}

FlagData flags_for(const CMatrix& m, const CMatrix& m_inv, Complex lambda_1, Complex inv_lambda_1) {
  FlagData f;
  f.lambda_1 = lambda_1;
  f.lambda_n = 1.0 / inv_lambda_1;
  f.plus_line = ProjLine(right_eigenvector(m, lambda_1));
  f.minus_hyperplane = ProjHyperplane(left_eigenvector(m, lambda_1));
  f.minus_line = ProjLine(right_eigenvector(m_inv, inv_lambda_1));
  f.plus_hyperplane = ProjHyperplane(left_eigenvector(m_inv, inv_lambda_1));
  if (std::abs(pair(f.plus_hyperplane, f.minus_line)) < 1e-10 ||
      std::abs(pair(f.minus_hyperplane, f.plus_line)) < 1e-10)
    throw TransversalityFailure("attracting and repelling flags are not transverse");
  return f;
}

namespace {

double top_gap(const std::vector<Complex>& values) { return std::abs(values[1]) / std::abs(values[0]); }

}  // namespace

FlagData matrix_flags(const CMatrix& m, double tol) {
  const auto values = eigenvalues(m);
  const std::size_t n = values.size();
  const double gap_n = std::abs(values[n - 1]) / std::abs(values[n - 2]);
  if (!(top_gap(values) <= 1.0 - tol) || !(gap_n <= 1.0 - tol))
    throw DegenerateSpectrum("element is not proximal at both ends");
  return flags_for(m, values.front(), values.back());
}

FlagData matrix_flags(const CMatrix& m, const CMatrix& m_inv, double tol) {
  const auto top = eigenvalues(m);
  const auto bottom = eigenvalues(m_inv);
  if (!(top_gap(top) <= 1.0 - tol) || !(top_gap(bottom) <= 1.0 - tol))
    throw DegenerateSpectrum("element is not proximal at both ends");
  return flags_for(m, m_inv, top.front(), bottom.front());
}

FlagData fixed_flags(const Representation& rep, const Word& gamma, double tol) {
  if (gamma.empty()) throw DegenerateSpectrum("the identity has no fixed flags");
  try {
    return matrix_flags(rep.evaluate(gamma), rep.evaluate(gamma.inverse()), tol);
  } catch (const DegenerateSpectrum& e) {
    throw DegenerateSpectrum("word \"" + gamma.str() + "\": " + e.what());
  }
}

Complex complex_length(const Representation& rep, const Word& gamma, double tol) {
  if (gamma.empty()) throw DegenerateSpectrum("the identity has no complex length");
  const auto top = eigenvalues(rep.evaluate(gamma));
  const auto bottom = eigenvalues(rep.evaluate(gamma.inverse()));
  // |lambda_n / lambda_1| = 1 / |top * bottom|
  if (!(1.0 / std::abs(top.front() * bottom.front()) <= 1.0 - tol))
    throw DegenerateSpectrum("word \"" + gamma.str() + "\" is not loxodromic");
  return std::log(top.front() * bottom.front());
}

// ---------------------------------------------------------------------------

Complex schottky_root(Complex L, std::optional<Complex> hint) {
  const Complex disc = L * L - 4.0;
  if (std::abs(disc) <= 1e-12 * std::max(1.0, std::norm(L)))
    throw BranchPointError("L^2 = 4: the roots of x^2 + Lx + 1 coincide");
  const Complex s = std::sqrt(disc);
  const Complex r1 = (-L + s) / 2.0;
  const Complex r2 = (-L - s) / 2.0;
  // The product of the roots is 1; recover the small one from the large one.
  const Complex big = std::abs(r1) >= std::abs(r2) ? r1 : r2;
  const Complex small = 1.0 / big;
  if (hint) return std::abs(small - *hint) <= std::abs(big - *hint) ? small : big;
  return small;
}

CMatrix schottky_x(Complex L) { return CMatrix{{L, 1.0}, {-1.0, 0.0}}; }

CMatrix schottky_y(Complex L, Complex root) { return CMatrix{{0.0, root}, {-1.0 / root, L}}; }

namespace {

std::string complex_label(Complex z) {
  return "(" + std::to_string(z.real()) + "," + std::to_string(z.imag()) + ")";
}

}  // namespace

Representation schottky_gamma(Complex L, std::optional<Complex> root_hint) {
  const Complex x = schottky_root(L, root_hint);
  return Representation(2, {schottky_x(L), schottky_y(L, x)}, "schottky L=" + complex_label(L));
}

Representation schottky_gamma_prime(Complex L, std::optional<Complex> root_hint) {
  const Complex x = schottky_root(L, root_hint);
  const CMatrix X = schottky_x(L);
  const CMatrix Y = schottky_y(L, x);
  return Representation(2, {X * X, X * Y * Y * Y}, "schottky_prime L=" + complex_label(L));
}

CMatrix iota3(const CMatrix& m) {
  const Complex a = m(0, 0), b = m(0, 1), c = m(1, 0), d = m(1, 1);
  // Symmetric square in the orthonormal monomial basis (e1^2, sqrt2 e1e2, e2^2),
  // so that unitary matrices go to unitary matrices.
  const double r2 = std::numbers::sqrt2;
  return CMatrix{{a * a, r2 * a * b, b * b}, {r2 * a * c, a * d + b * c, r2 * b * d}, {c * c, r2 * c * d, d * d}};
}

Representation compose_iota(const Representation& rep) {
  if (rep.n() != 2) throw ConfigError("the symmetric-square embedding needs a 2-dimensional representation");
  std::vector<CMatrix> gens;
  for (int i = 0; i < rep.rank(); ++i) gens.push_back(iota3(rep.generator(i)));
  return Representation(rep.rank(), std::move(gens), "iota o " + rep.label());
}

// ---------------------------------------------------------------------------

std::size_t walk_unit_count(int rank) {
  return 1 + static_cast<std::size_t>(2 * rank) * static_cast<std::size_t>(2 * rank - 1);
}

namespace {

struct Walker {
  const Representation& rep;
  const LetterOrder& ord;
  const WalkOptions& opt;
  const WordVisitor& visit;
  std::vector<CMatrix> compound_images;
  std::vector<Letter> word;
  std::vector<CMatrix> mats;
  std::vector<CMatrix> comps;

  Walker(const Representation& r, const LetterOrder& o, const WalkOptions& op, const WordVisitor& v)
      : rep(r), ord(o), opt(op), visit(v) {
    const std::size_t depth = static_cast<std::size_t>(std::max(opt.max_len, 2)) + 1;
    word.resize(depth);
    mats.assign(depth, CMatrix(rep.n()));
    if (opt.with_compound) {
      for (int c = 0; c < 2 * rep.rank(); ++c) compound_images.push_back(compound2(rep.image(Letter::from_code(c))));
      comps.assign(depth, CMatrix(rep.n() * (rep.n() - 1) / 2));
    }
  }

  int compound_limit() const { return opt.compound_max_len < 0 ? opt.max_len : opt.compound_max_len; }

  void emit(std::size_t len) {
    if (static_cast<int>(len) < opt.min_len || static_cast<int>(len) > opt.max_len) return;
    const bool has_compound = opt.with_compound && static_cast<int>(len) <= compound_limit();
    visit(std::span<const Letter>(word.data(), len), mats[len], has_compound ? &comps[len] : nullptr);
  }

  void descend(std::size_t len) {
    if (static_cast<int>(len) >= opt.max_len) return;
    const Letter last = word[len - 1];
    for (Letter c : ord.letters()) {
      if (last.cancels(c)) continue;
      word[len] = c;
      multiply_into(mats[len], rep.image(c), mats[len + 1]);
      if (opt.with_compound && static_cast<int>(len) + 1 <= compound_limit())
        multiply_into(comps[len], compound_images[static_cast<std::size_t>(c.code())], comps[len + 1]);
      emit(len + 1);
      descend(len + 1);
    }
  }

  void run(std::size_t unit) {
    const int n = rep.n();
    mats[0] = CMatrix::identity(n);
    if (opt.with_compound) comps[0] = CMatrix::identity(n * (n - 1) / 2);
    const auto& letters = ord.letters();
    if (unit == 0) {
      emit(0);
      for (Letter c : letters) {
        word[0] = c;
        mats[1] = rep.image(c);
        if (opt.with_compound) comps[1] = compound_images[static_cast<std::size_t>(c.code())];
        emit(1);
      }
      return;
    }
    if (opt.max_len < 2) return;
    const std::size_t branching = letters.size() - 1;
    const Letter first = letters[(unit - 1) / branching];
    std::size_t k = (unit - 1) % branching;
    Letter second = first;
    for (Letter c : letters) {
      if (first.cancels(c)) continue;
      if (k-- == 0) {
        second = c;
        break;
      }
    }
    word[0] = first;
    word[1] = second;
    mats[1] = rep.image(first);
    multiply_into(mats[1], rep.image(second), mats[2]);
    if (opt.with_compound) {
      comps[1] = compound_images[static_cast<std::size_t>(first.code())];
      multiply_into(comps[1], compound_images[static_cast<std::size_t>(second.code())], comps[2]);
    }
    emit(2);
    descend(2);
  }
};

}  // namespace

void walk_unit(const Representation& rep, const LetterOrder& ord, const WalkOptions& opt, std::size_t unit,
               const WordVisitor& visit) {
  if (ord.rank() != rep.rank()) throw ConfigError("letter order rank does not match representation rank");
  Walker(rep, ord, opt, visit).run(unit);
}

void run_units(std::size_t units, unsigned threads, const std::function<void(std::size_t)>& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, units));
  if (threads <= 1) {
    for (std::size_t u = 0; u < units; ++u) fn(u);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(units);
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t u = next++; u < units; u = next++) {
        try {
          fn(u);
        } catch (...) {
          errors[u] = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  // Lowest failing unit wins so the reported error does not depend on scheduling.
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace basm
