#pragma once

// Construction pipelines: building blocks and direct sums, projection from a
// linear centre, and the extend & restrict random search.

#include <algorithm>
#include <future>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "pfafflab/bundle.hpp"
#include "pfafflab/json_io.hpp"
#include "pfafflab/poly_io.hpp"

namespace pfafflab {

inline RingPtr<QQ> standard_ring() { return make_ring(QQ{}, {"a", "b", "c", "d"}); }

/// Coefficient vector of a linear form.
template <class F>
std::vector<typename F::Element> linear_coefficients(const Poly<F>& f) {
  if (!f.is_zero() && (!f.is_homogeneous() || f.degree() != 1))
    throw std::invalid_argument("not a linear form: " + to_string(f));
  std::vector<typename F::Element> v(f.ring()->nvars(), f.ring()->field().zero());
  for (const auto& t : f.terms())
    for (std::size_t i = 0; i < v.size(); ++i)
      if (t.mono.exp[i]) v[i] = t.coeff;
  return v;
}

template <class F>
Matrix<F> coefficient_matrix(const std::vector<Poly<F>>& forms) {
  if (forms.empty()) throw std::invalid_argument("no linear forms given");
  const auto& ring = forms.front().ring();
  Matrix<F> M(ring->field(), forms.size(), ring->nvars());
  for (std::size_t r = 0; r < forms.size(); ++r) {
    auto v = linear_coefficients(forms[r]);
    for (std::size_t c = 0; c < v.size(); ++c) M(r, c) = v[c];
  }
  return M;
}

// ---------------------------------------------------------------------------
// Building blocks

/// 3x3 block with upper entries l1, l2, l3; the forms must cut out a point.
inline SkewMatrix<QQ> block_point3(const Poly<QQ>& l1, const Poly<QQ>& l2, const Poly<QQ>& l3) {
  if (coefficient_matrix<QQ>({l1, l2, l3}).rank() != 3)
    throw std::invalid_argument("block_point3: the forms are dependent and do not cut out a point");
  SkewMatrix<QQ> A(l1.ring(), 3);
  A.set(0, 1, l1);
  A.set(0, 2, l2);
  A.set(1, 2, l3);
  return A;
}

/// Block for the point P, from a basis of the forms vanishing at P.  Each
/// form is scaled to leading coefficient 1 and the forms are ordered by
/// their leading variable, so [1:0:0:1] gives (a - d, b, c).
inline SkewMatrix<QQ> block_point3(const RingPtr<QQ>& ring, const std::vector<Rational>& point) {
  if (ring->nvars() != 4 || point.size() != 4) throw std::invalid_argument("block_point3: need a point of P^3");
  if (std::all_of(point.begin(), point.end(), [](const Rational& x) { return x.is_zero(); }))
    throw std::invalid_argument("block_point3: the zero vector is not a point");
  Matrix<QQ> row(QQ{}, 1, 4);
  for (std::size_t i = 0; i < 4; ++i) row(0, i) = point[i];
  std::vector<Poly<QQ>> forms;
  for (const auto& v : row.kernel()) {
    Poly<QQ> f(ring);
    for (std::size_t i = 0; i < 4; ++i)
      if (!v[i].is_zero()) f += Poly<QQ>::variable(ring, i).scaled(v[i]);
    forms.push_back(f.monic());
  }
  std::sort(forms.begin(), forms.end(), [&ring](const Poly<QQ>& x, const Poly<QQ>& y) {
    return ring->compare(x.leading_monomial(), y.leading_monomial()) > 0;
  });
  return block_point3(forms[0], forms[1], forms[2]);
}

/// 4x4 block of the lines meeting two fixed skew lines.
inline SkewMatrix<QQ> block_skewlines(const RingPtr<QQ>& ring) {
  SkewMatrix<QQ> A(ring, 4);
  A.set(0, 2, Poly<QQ>::variable(ring, 0));
  A.set(0, 3, Poly<QQ>::variable(ring, 1));
  A.set(1, 2, Poly<QQ>::variable(ring, 2));
  A.set(1, 3, Poly<QQ>::variable(ring, 3));
  return A;
}

/// 5x5 bordered block from the Euler sequence; rank 2 off the origin.
inline SkewMatrix<QQ> block_euler(const RingPtr<QQ>& ring) {
  SkewMatrix<QQ> A(ring, 5);
  for (std::size_t i = 0; i < 4; ++i) A.set(0, i + 1, Poly<QQ>::variable(ring, i));
  return A;
}

/// 4x5 projection of the Euler block from [1:0:0:1]: rows x0, x2, x3,
/// x0 - x1 + x4, whose common kernel is spanned by e1 + e4.
inline Matrix<QQ> euler_projection_from_1001() {
  Matrix<QQ> M(QQ{}, 4, 5);
  M(0, 0) = Rational(1);
  M(1, 2) = Rational(1);
  M(2, 3) = Rational(1);
  M(3, 0) = Rational(1);
  M(3, 1) = Rational(-1);
  M(3, 4) = Rational(1);
  return M;
}

// ---------------------------------------------------------------------------
// Projection

struct ProjectionSpec {
  Matrix<QQ> M;  // k x m; its kernel is the cone over the centre

  static ProjectionSpec from_forms(const std::vector<Poly<QQ>>& forms) {
    ProjectionSpec s{coefficient_matrix(forms)};
    if (s.M.rank() != s.M.rows()) throw std::invalid_argument("projection centre: forms are dependent");
    return s;
  }

  /// Forms given as strings in x0, ..., x{m-1}.
  static ProjectionSpec from_strings(const std::vector<std::string>& forms, std::size_t m) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < m; ++i) names.push_back("x" + std::to_string(i));
    auto ring = make_ring(QQ{}, names);
    std::vector<Poly<QQ>> polys;
    for (const auto& f : forms) polys.push_back(parse_poly(ring, f));
    return from_forms(polys);
  }
};

struct ProjectionOutcome {
  SkewMatrix<QQ> matrix;
  CertifyOutcome certification;
  bool certified() const { return std::holds_alternative<Certificate>(certification); }
};

/// Compresses A by the centre and certifies the result on Q.  A refutation
/// carries the point where the projected rank drops, i.e. where the centre
/// meets some L_omega.
inline ProjectionOutcome project_system(const SkewMatrix<QQ>& A, const ProjectionSpec& spec, const Quadric<QQ>& Q,
                                        const CertifyOptions& opt = {}, std::size_t target_size = 6) {
  if (spec.M.rows() != target_size)
    throw std::invalid_argument("projection: centre gives size " + std::to_string(spec.M.rows()) + ", need " +
                                std::to_string(target_size));
  auto B = compress(A, spec.M);
  return {B, certify_constant_rank(B, Q, opt)};
}

struct NamedCentre {
  std::string label;
  std::vector<std::string> forms;
  bool swap_first_block = false;  // see c2_four_source
};

/// The three centres of the c2 = 4 example, for a sum of two skew-line blocks.
inline const std::vector<NamedCentre>& c2_four_centres() {
  static const std::vector<NamedCentre> centres{
      {"IND2", {"x0 - x2", "x0 + x1 - x3", "2*x2 - x3 + x4", "x3 - x4 - x5", "2*x4 + x5 - 2*x6", "x5 - 2*x7"}, false},
      {"IND3", {"x0", "x1 - x6", "x2 + x7", "x3 - x6", "x4 - x6", "x5"}, false},
      {"DEC4", {"x0", "x2", "x3 + x7", "x4 + x1", "x5", "x6"}, true},
  };
  return centres;
}

/// The 8x8 matrix a centre is applied to.  The centres are written in a
/// basis the source does not fix: the IND2 and IND3 centres work on the plain
/// sum of two skew-line blocks, while the DEC4 centre needs the first block's
/// last two basis vectors exchanged (the same block, conjugated by a
/// permutation).  On the plain sum the DEC4 centre meets some L_omega.
inline SkewMatrix<QQ> c2_four_source(const RingPtr<QQ>& ring, bool swap_first_block) {
  auto blk = block_skewlines(ring);
  auto first = blk;
  if (swap_first_block) {
    Matrix<QQ> P(QQ{}, 4, 4);
    P(0, 0) = P(1, 1) = P(2, 3) = P(3, 2) = Rational(1);
    first = compress(blk, P);
  }
  return direct_sum(first, blk);
}

// ---------------------------------------------------------------------------
// Extend & restrict

struct ExtendOptions {
  std::uint64_t seed = 1;
  int budget = 500;
  std::optional<std::string> target;  // required label, if any
  unsigned threads = 0;               // 0: hardware concurrency
  CertifyOptions certify{};
  BundleOptions bundle{};
};

struct ExtendResult {
  SkewMatrix<QQ> matrix;
  Quadric<QQ> quadric;
  Poly<QQ> linear_factor;
  Matrix<QQ> N;  // A = plane + x·N
  int draw = 0;
  std::uint64_t draw_seed = 0;
  Certificate certificate;
  BundleInvariants invariants;
};

class BudgetExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PlaneInput {
  SkewMatrix<QQ> plane;  // entries in three variables
  std::string extend_var;
  std::optional<Matrix<QQ>> known_extension;  // N of a known extension, if recorded
};

/// {"size": 6, "vars": [3 names], "upper": [...], "extend_var": "d",
///  optional "known_extension": [[i, j, n], ...]}
inline PlaneInput plane_from_json(const Json& j, const std::string& where = "plane") {
  auto ring = make_ring(QQ{}, vars_from_json(j, where));
  if (ring->nvars() != 3) throw SchemaError(where + ".vars: a plane has three variables");
  PlaneInput in{matrix_from_json(ring, j, where), {}, std::nullopt};
  if (in.plane.size() != 6) throw SchemaError(where + ".size: expected 6");
  const Json& ev = require(j, "extend_var", where);
  if (!ev.is_string()) throw SchemaError(where + ".extend_var: expected a variable name");
  in.extend_var = ev.get<std::string>();
  if (j.contains("known_extension")) {
    Matrix<QQ> N(QQ{}, 6, 6);
    const Json& pe = j.at("known_extension");
    for (std::size_t k = 0; k < pe.size(); ++k) {
      const Json& e = pe[k];
      std::string at = where + ".known_extension[" + std::to_string(k) + "]";
      if (!e.is_array() || e.size() != 3 || !e[0].is_number_integer() || !e[1].is_number_integer() ||
          !e[2].is_number_integer())
        throw SchemaError(at + ": expected [i, j, integer]");
      long r = e[0].get<long>(), c = e[1].get<long>();
      if (r < 1 || c <= r || c > 6) throw SchemaError(at + ": indices must satisfy 1 <= i < j <= 6");
      N(static_cast<std::size_t>(r - 1), static_cast<std::size_t>(c - 1)) = Rational(e[2].get<long>());
      N(static_cast<std::size_t>(c - 1), static_cast<std::size_t>(r - 1)) = Rational(-e[2].get<long>());
    }
    in.known_extension = N;
  }
  return in;
}

/// Checks that the plane has rank 4 everywhere on P^2: the 15 sub-Pfaffians
/// have no common zero and the Pfaffian vanishes.
inline bool plane_has_constant_rank4(const SkewMatrix<QQ>& plane, const GroebnerOptions& opt = {}) {
  if (plane.size() != 6 || !plane.is_linear()) return false;
  if (!pfaffian(plane).is_zero()) return false;
  std::vector<Poly<QQ>> gens;
  for (auto& f : plucker_forms(plane))
    if (!f.is_zero()) gens.push_back(f);
  return !gens.empty() && is_projectively_empty(gens, opt).empty;
}

/// The plane re-embedded in the four-variable ring (variables sorted by
/// name), and the index of the extension variable there.
struct EmbeddedPlane {
  SkewMatrix<QQ> plane;
  std::size_t ext = 0;
};

inline EmbeddedPlane embed_plane(const PlaneInput& in) {
  const auto& pvars = in.plane.ring()->vars();
  if (std::find(pvars.begin(), pvars.end(), in.extend_var) != pvars.end())
    throw std::invalid_argument("extension variable '" + in.extend_var + "' is already a plane variable");
  std::vector<std::string> vars = pvars;
  vars.push_back(in.extend_var);
  std::sort(vars.begin(), vars.end());
  auto ring = make_ring(QQ{}, vars);
  auto index = [&vars](const std::string& v) {
    return static_cast<std::size_t>(std::find(vars.begin(), vars.end(), v) - vars.begin());
  };
  std::vector<std::size_t> map;
  for (const auto& v : pvars) map.push_back(index(v));
  SkewMatrix<QQ> plane4(ring, in.plane.size());
  for (std::size_t i = 0; i < in.plane.size(); ++i)
    for (std::size_t j = i + 1; j < in.plane.size(); ++j) plane4.set(i, j, reembed(in.plane.upper(i, j), ring, map));
  return {plane4, index(in.extend_var)};
}

/// A = plane + x·N restricted to the quadric factor of Pf(A), if Pf(A)
/// is a linear form times a smooth quadric and A certifies there.
inline std::optional<ExtendResult> extend_with(const EmbeddedPlane& ep, const Matrix<QQ>& N, const ExtendOptions& opt,
                                               std::uint64_t seed) {
  const auto& ring = ep.plane.ring();
  SkewMatrix<QQ> A = ep.plane;
  Poly<QQ> x = Poly<QQ>::variable(ring, ep.ext);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = i + 1; j < 6; ++j)
      if (!N(i, j).is_zero()) A.set(i, j, A.upper(i, j) + x.scaled(N(i, j)));
  auto fac = pfaffian_factorization(A, opt.certify.groebner);
  if (fac.identically_zero || fac.linear.size() != 1 || !fac.remainder) return std::nullopt;
  Quadric<QQ> Q{*fac.remainder, std::nullopt};
  if (Q.gram().det().is_zero()) return std::nullopt;
  auto outcome = certify_constant_rank(A, Q, opt.certify);
  auto* cert = std::get_if<Certificate>(&outcome);
  if (!cert) return std::nullopt;
  BundleOptions bo = opt.bundle;
  bo.seed = Rng::sub_seed(seed, 1);
  BundleInvariants inv;
  try {
    inv = compute_invariants(A, Q, bo);
  } catch (const std::exception&) {
    return std::nullopt;
  }
  return ExtendResult{A, Q, fac.linear.front(), N, 0, seed, *cert, inv};
}

/// One draw: N with entries in [-2, 2] from the draw's own seed.
inline std::optional<ExtendResult> extend_draw(const EmbeddedPlane& ep, int draw, std::uint64_t draw_seed,
                                               const ExtendOptions& opt) {
  Rng rng(draw_seed);
  Matrix<QQ> N(QQ{}, 6, 6);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = i + 1; j < 6; ++j) {
      N(i, j) = Rational(rng.uniform(-2, 2));
      N(j, i) = -N(i, j);
    }
  if (N.is_zero()) return std::nullopt;
  auto r = extend_with(ep, N, opt, draw_seed);
  if (!r || (opt.target && r->invariants.label != *opt.target)) return std::nullopt;
  r->draw = draw;
  return r;
}

/// Extends a plane of constant rank 4 by plane + x·N, restricts to the
/// quadric factor of the Pfaffian, and returns the first certified draw (in
/// draw order).  Draws run in parallel batches; the result depends only on
/// the seed.
inline ExtendResult extend_restrict(const PlaneInput& in, const ExtendOptions& opt = {}) {
  if (!plane_has_constant_rank4(in.plane, opt.certify.groebner))
    throw std::invalid_argument("extend_restrict: the plane matrix does not have constant rank 4 on P^2");
  const auto ep = embed_plane(in);

  const unsigned threads = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
  for (int start = 0; start < opt.budget; start += static_cast<int>(threads)) {
    const int end = std::min(opt.budget, start + static_cast<int>(threads));
    std::vector<std::future<std::optional<ExtendResult>>> batch;
    for (int d = start; d < end; ++d)
      batch.push_back(std::async(std::launch::async, [&, d]() -> std::optional<ExtendResult> {
        try {
          return extend_draw(ep, d, Rng::sub_seed(opt.seed, static_cast<std::uint64_t>(d)), opt);
        } catch (const std::exception&) {
          return std::nullopt;  // a draw that exhausts a budget or degenerates is skipped
        }
      }));
    std::optional<ExtendResult> found;
    for (auto& f : batch) {
      auto r = f.get();
      if (r && !found) found = std::move(r);
    }
    if (found) return *found;
  }
  throw BudgetExhausted("extend_restrict: no " + (opt.target ? *opt.target + " " : std::string()) +
                        "system found in " + std::to_string(opt.budget) + " draws");
}

}  // namespace pfafflab
