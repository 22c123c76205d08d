#include "tginv/idem.hpp"

#include "tginv/ginv.hpp"

namespace tginv {

namespace {

void require_square(const HomogeneousMap& a, const char* what) {
  if (!a.is_square()) {
    throw ShapeError(std::string(what) + ": needs a square tensor, map is " +
                     std::to_string(a.output_dim()) + " x " + std::to_string(a.input_dim()));
  }
}

}  // namespace

IdempotenceReport is_idempotent(const HomogeneousMap& a, const VerificationSpec& spec) {
  require_square(a, "is_idempotent");
  const Rational root = Rational::reciprocal(a.degree());
  IdempotenceReport report{"idempotent", 1, {}};
  report.check = run_identity_check("idempotent", a.input_dim(), spec, [&](const VectorXc& y) {
    VectorXc b = a(y);
    return std::pair{IdentitySide::rooted(b, root, [&](const VectorXc& w) { return a(w); }),
                     IdentitySide::fixed(b)};
  });
  return report;
}

IdempotenceReport is_idempotent(const Tensor& a, const VerificationSpec& spec) {
  return is_idempotent(HomogeneousMap(a), spec);
}

IdempotenceReport is_k_t_idempotent(const HomogeneousMap& a, int k, const VerificationSpec& spec) {
  require_square(a, "is_k_t_idempotent");
  if (k < 2) throw DomainError("is_k_t_idempotent: k must be >= 2");
  std::int64_t s = 1;
  for (int j = 1; j < k; ++j) {
    if (s > (std::int64_t{1} << 40) / a.degree()) throw CapError("is_k_t_idempotent: root degree too large");
    s *= a.degree();
  }
  const Rational root = Rational::reciprocal(s);
  IdempotenceReport report{"k-T-idempotent", k, {}};
  report.check = run_identity_check("k-T-idempotent", a.input_dim(), spec, [&](const VectorXc& y) {
    return std::pair{IdentitySide::rooted(y, root,
                                          [&a, k](const VectorXc& v0) {
                                            VectorXc v = v0;
                                            for (int j = 0; j < k; ++j) v = a(v);
                                            return v;
                                          }),
                     IdentitySide::fixed(a(y))};
  });
  return report;
}

IdempotenceReport is_k_t_idempotent(const Tensor& a, int k, const VerificationSpec& spec) {
  return is_k_t_idempotent(HomogeneousMap(a), k, spec);
}

PropagationReport t_implies_k_check(const HomogeneousMap& a, int kmax, VerificationSpec spec) {
  spec.policy.mode = BranchMode::all;
  PropagationReport report;
  report.by_k.push_back(is_k_t_idempotent(a, 2, spec));
  report.precondition = report.by_k.front().pass();
  if (!report.precondition) {
    report.note = "not T-idempotent under all branches; propagation not checked";
    return report;
  }
  report.pass = true;
  for (int k = 3; k <= kmax; ++k) {
    report.by_k.push_back(is_k_t_idempotent(a, k, spec));
    report.pass = report.pass && report.by_k.back().pass();
  }
  return report;
}

SelfInverseReport self_inverse_check(const Tensor& a, const VerificationSpec& spec) {
  VerificationSpec hyp = spec;
  hyp.policy.mode = BranchMode::all;
  SelfInverseReport report{is_k_t_idempotent(a, 2, hyp), is_idempotent(a, hyp), {}, {}, {}, true};
  if (report.t_idempotent.pass()) {
    VerificationSpec two = spec;
    two.kind = GinvKind::two;
    report.two = verify_inverse(a, a, two);
    report.pass = report.pass && report.two->pass;
    if (report.idempotent.pass()) {
      VerificationSpec one = spec;
      one.kind = GinvKind::one;
      report.one = verify_inverse(a, a, one);
      std::mt19937_64 rng(spec.seed);
      const VectorXc b = tginv::apply(a, draw_sample(rng, a.trailing_dim(), spec.sampling));
      report.solver_residual = solve_via_ginv(a, a, b).residual;
      report.pass = report.pass && report.one->pass && *report.solver_residual <= spec.tol;
    }
  }
  return report;
}

IdempotenceReport product_idempotence_check(const Tensor& a, const Tensor& x, GinvKind kind_held,
                                            const VerificationSpec& spec) {
  if (x.leading_dim() != a.trailing_dim()) {
    throw ShapeError("product_idempotence_check: X " + x.shape().to_string() +
                     " does not chain with A " + a.shape().to_string());
  }
  const HomogeneousMap c = compose(HomogeneousMap(a), HomogeneousMap(x));
  switch (kind_held) {
    case GinvKind::one:
      return is_idempotent(c, spec);
    case GinvKind::two:
      return is_k_t_idempotent(c, 2, spec);
    default:
      throw DomainError("product_idempotence_check: kind must be one or two");
  }
}

}  // namespace tginv
