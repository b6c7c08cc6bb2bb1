#include "ihlab/sl2.hpp"

#include <string>

#include "ihlab/errors.hpp"

namespace ihlab {

namespace {

template <class F>
OperatorOnTotal<F> cup_rational(const Algebra<F>& alg, const RationalVector& alpha) {
  auto v = convert_vector(alg.field, std::span<const mpq_class>(alpha));
  return cup_operator(alg, std::span<const typename F::Scalar>(v));
}

template <class F>
bool lefschetz_operator(const Algebra<F>& alg, const OperatorOnTotal<F>& l) {
  const std::size_t n = static_cast<std::size_t>(alg.n);
  for (std::size_t j = 1; j <= n; ++j) {
    auto m = power_block(alg, l, n - j, 2 * j);
    if (m.rows() != m.cols() || rank(alg.field, m) != m.rows()) return false;
  }
  return true;
}

/// Primitive spaces P_b = Ker L^{2n-2b+1} in degree index b <= n, and for
/// each degree index k the basis {L^{k-b} p : p in P_b} of that degree.
template <class F>
struct Ladder {
  std::vector<Subspace<F>> primitive;          // b = 0..n
  std::vector<MatrixOver<F>> basis;            // per k
  std::vector<std::vector<std::size_t>> part;  // per k: b of each row

  Ladder(const Algebra<F>& alg, const OperatorOnTotal<F>& l) {
    const std::size_t n = static_cast<std::size_t>(alg.n), top = alg.top();
    for (std::size_t b = 0; b <= n; ++b)
      primitive.push_back(subspace_kernel(alg.field, power_block(alg, l, b, top - 2 * b + 1)));
    for (std::size_t k = 0; k <= top; ++k) {
      MatrixOver<F> rows(0, alg.dims[k]);
      std::vector<std::size_t> labels;
      const std::size_t bmax = std::min(k, top - k);
      for (std::size_t b = 0; b <= bmax; ++b) {
        if (primitive[b].dim() == 0) continue;
        auto lifted = multiply(alg.field, primitive[b].basis(), power_block(alg, l, b, k - b));
        for (std::size_t r = 0; r < lifted.rows(); ++r) {
          rows.append_row(lifted.row(r));
          labels.push_back(b);
        }
      }
      if (rows.rows() != alg.dims[k])
        throw StructuralError("primitive decomposition of degree " + std::to_string(2 * k) + " has " +
                              std::to_string(rows.rows()) + " vectors for dimension " + std::to_string(alg.dims[k]));
      basis.push_back(std::move(rows));
      part.push_back(std::move(labels));
    }
  }
};

}  // namespace

template <class F>
bool is_lefschetz(const Algebra<F>& alg, const RationalVector& alpha) {
  if (std::all_of(alpha.begin(), alpha.end(), [](const mpq_class& x) { return sgn(x) == 0; })) return false;
  return lefschetz_operator(alg, cup_rational(alg, alpha));
}

template <class F>
CheckReport lefschetz_criterion_check(const Algebra<F>& alg, const std::vector<RationalVector>& samples) {
  if (!alg.model) throw PreconditionError("lefschetz_criterion_check needs the source model");
  std::vector<std::string> violations;
  for (std::size_t s = 0; s < samples.size(); ++s) {
    bool lef = is_lefschetz(alg, samples[s]);
    bool nondeg = sgn(alg.model->lattice.q(samples[s])) != 0;
    if (lef != nondeg)
      violations.push_back("sample " + std::to_string(s) + ": q = " + format_rational(alg.model->lattice.q(samples[s])) +
                           " but is_lefschetz = " + (lef ? "true" : "false"));
  }
  CheckReport r;
  r.record("lefschetz_criterion", violations.empty(), violations);
  return r;
}

template <class F>
std::vector<VectorOver<F>> primitive_decompose(const Algebra<F>& alg, const RationalVector& alpha, std::size_t k,
                                               const VectorOver<F>& gamma) {
  auto l = cup_rational(alg, alpha);
  if (!is_lefschetz(alg, alpha)) throw PreconditionError("primitive_decompose: class is not of Lefschetz type");
  if (k > alg.top() || gamma.size() != alg.dims[k]) throw InputError("primitive_decompose: class has wrong degree");
  Ladder<F> ladder(alg, l);
  const auto& f = alg.field;
  auto coords = vec_mat(f, std::span<const typename F::Scalar>(gamma), inverse(f, ladder.basis[k]));
  const std::size_t bmax = std::min(k, alg.top() - k);
  std::vector<VectorOver<F>> out(k + 1);
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = VectorOver<F>(alg.dims[k - j], f.zero());
  std::size_t row = 0;
  for (std::size_t b = 0; b <= bmax; ++b) {
    const auto& p = ladder.primitive[b];
    auto& target = out[k - b];
    for (std::size_t r = 0; r < p.dim(); ++r, ++row) {
      if (f.is_zero(coords[row])) continue;
      for (std::size_t c = 0; c < target.size(); ++c)
        target[c] = f.add(target[c], f.mul(coords[row], p.basis()(r, c)));
    }
  }
  return out;
}

template <class F>
Sl2Triple<F> sl2_triple(const Algebra<F>& alg, const RationalVector& alpha) {
  Sl2Triple<F> t;
  t.L = cup_rational(alg, alpha);
  if (!is_lefschetz(alg, alpha)) throw PreconditionError("sl2_triple: class is not of Lefschetz type");
  const auto& f = alg.field;
  const std::size_t top = alg.top();

  t.H = zero_operator(alg, 0);
  for (std::size_t k = 0; k <= top; ++k) {
    auto h = f.from_int(2 * static_cast<std::int64_t>(k) - static_cast<std::int64_t>(top));
    for (std::size_t i = 0; i < alg.dims[k]; ++i) t.H.blocks[k](i, i) = h;
  }

  // Lambda(L^j p) = j (2n - d + j + 1) L^{j-1} p for p primitive, d = 2k
  Ladder<F> ladder(alg, t.L);
  t.Lambda = zero_operator(alg, -2);
  for (std::size_t k = 1; k <= top; ++k) {
    MatrixOver<F> image(0, alg.dims[k - 1]);
    const std::size_t bmax = std::min(k, top - k);
    for (std::size_t b = 0; b <= bmax; ++b) {
      const auto& p = ladder.primitive[b];
      if (p.dim() == 0) continue;
      const std::int64_t j = static_cast<std::int64_t>(k - b);
      if (j == 0) {
        for (std::size_t r = 0; r < p.dim(); ++r) image.append_row(VectorOver<F>(alg.dims[k - 1], f.zero()));
        continue;
      }
      const auto c = f.from_int(j * (static_cast<std::int64_t>(top) - 2 * static_cast<std::int64_t>(k) + j + 1));
      auto lowered = scale(f, c, multiply(f, p.basis(), power_block(alg, t.L, b, static_cast<std::size_t>(j - 1))));
      for (std::size_t r = 0; r < lowered.rows(); ++r) image.append_row(lowered.row(r));
    }
    t.Lambda.blocks[k] = multiply(f, inverse(f, ladder.basis[k]), image);
  }
  return t;
}

template <class F>
OperatorOnTotal<F> commutator(const Algebra<F>& alg, const OperatorOnTotal<F>& a, const OperatorOnTotal<F>& b) {
  const auto& f = alg.field;
  return combine(alg, f.one(), compose(alg, a, b), f.neg(f.one()), compose(alg, b, a));
}

template <class F>
CheckReport check_sl2_relations(const Algebra<F>& alg, const Sl2Triple<F>& t) {
  const auto& f = alg.field;
  CheckReport r;
  auto two = f.from_int(2);
  auto hl = commutator(alg, t.H, t.L);
  r.record("sl2_[H,L]=2L", operator_equal(alg, hl, combine(alg, two, t.L, f.zero(), t.L)));
  auto hlam = commutator(alg, t.H, t.Lambda);
  r.record("sl2_[H,Lambda]=-2Lambda", operator_equal(alg, hlam, combine(alg, f.neg(two), t.Lambda, f.zero(), t.Lambda)));
  auto llam = commutator(alg, t.L, t.Lambda);
  r.record("sl2_[L,Lambda]=H", operator_equal(alg, llam, t.H));
  return r;
}

#define IHLAB_INSTANTIATE(F)                                                                                    \
  template bool is_lefschetz(const Algebra<F>&, const RationalVector&);                                         \
  template CheckReport lefschetz_criterion_check(const Algebra<F>&, const std::vector<RationalVector>&);        \
  template std::vector<VectorOver<F>> primitive_decompose(const Algebra<F>&, const RationalVector&, std::size_t, \
                                                          const VectorOver<F>&);                                \
  template Sl2Triple<F> sl2_triple(const Algebra<F>&, const RationalVector&);                                   \
  template CheckReport check_sl2_relations(const Algebra<F>&, const Sl2Triple<F>&);                             \
  template OperatorOnTotal<F> commutator(const Algebra<F>&, const OperatorOnTotal<F>&, const OperatorOnTotal<F>&);

IHLAB_INSTANTIATE(Rationals)
IHLAB_INSTANTIATE(PrimeField)

#undef IHLAB_INSTANTIATE

}  // namespace ihlab
