#include "tginv/verification.hpp"

#include <algorithm>
#include <limits>

namespace tginv {

const char* to_string(GinvKind kind) {
  switch (kind) {
    case GinvKind::one:
      return "one";
    case GinvKind::two:
      return "two";
    case GinvKind::five:
      return "five";
    case GinvKind::group:
      return "group";
  }
  return "?";
}

std::size_t VerificationReport::failures(double tol) const {
  return static_cast<std::size_t>(
      std::count_if(residuals.begin(), residuals.end(), [tol](double r) { return !(r <= tol); }));
}

IdentitySide IdentitySide::fixed(VectorXc v) {
  IdentitySide side;
  side.value = std::move(v);
  return side;
}

IdentitySide IdentitySide::rooted(VectorXc radicand, Rational exponent,
                                  std::function<VectorXc(const VectorXc&)> eval) {
  IdentitySide side;
  side.radicand = std::move(radicand);
  side.exponent = exponent;
  side.eval = std::move(eval);
  return side;
}

double relative_residual(const VectorXc& lhs, const VectorXc& rhs) {
  if (lhs.size() != rhs.size()) throw ShapeError("residual of vectors with different lengths");
  if (lhs.size() == 0) return 0;
  const double diff = (lhs - rhs).cwiseAbs().maxCoeff();
  const double scale = std::max(1.0, rhs.cwiseAbs().maxCoeff());
  return diff / scale;
}

namespace {

std::vector<VectorXc> side_values(const IdentitySide& side, const BranchPolicy& policy,
                                  std::size_t cap) {
  if (!side.radicand) return {side.value};
  std::vector<VectorXc> out;
  if (!policy.exhaustive()) {
    out.push_back(side.eval(principal_hadamard_power(*side.radicand, side.exponent)));
    return out;
  }
  for (const VectorXc& root : branch_hadamard_powers(*side.radicand, side.exponent, cap))
    out.push_back(side.eval(root));
  return out;
}

std::size_t side_branches(const IdentitySide& side, std::size_t saturate) {
  return side.radicand ? branch_count(*side.radicand, side.exponent, saturate) : 1;
}

}  // namespace

IdentityOutcome evaluate_identity(const IdentitySide& lhs, const IdentitySide& rhs,
                                  const BranchPolicy& policy) {
  std::size_t lhs_count = 1, rhs_count = 1;
  if (policy.exhaustive()) {
    lhs_count = side_branches(lhs, policy.cap + 1);
    rhs_count = side_branches(rhs, policy.cap + 1);
    if (lhs_count > policy.cap || rhs_count > policy.cap / lhs_count) {
      throw CapError("identity check: more than " + std::to_string(policy.cap) +
                     " joint root assignments");
    }
  }
  const auto lhs_values = side_values(lhs, policy, policy.cap);
  const auto rhs_values = side_values(rhs, policy, policy.cap);

  IdentityOutcome best;
  best.residual = policy.mode == BranchMode::all ? -1.0 : std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < lhs_values.size(); ++i) {
    for (std::size_t j = 0; j < rhs_values.size(); ++j) {
      double r = relative_residual(lhs_values[i], rhs_values[j]);
      if (std::isnan(r)) r = std::numeric_limits<double>::infinity();
      const bool take = policy.mode == BranchMode::all ? r > best.residual : r < best.residual;
      if (take || (i == 0 && j == 0)) {
        best.residual = r;
        best.branch = {i, j, lhs_values.size(), rhs_values.size()};
      }
    }
  }
  best.lhs = lhs_values[best.branch.lhs];
  best.rhs = rhs_values[best.branch.rhs];
  return best;
}

VectorXc draw_sample(std::mt19937_64& rng, Index dim, Sampling sampling) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  VectorXc y(dim);
  for (Index i = 0; i < dim; ++i) {
    const double re = unit(rng);
    const double im = sampling == Sampling::complex_box ? unit(rng) : 0.0;
    y[i] = Complex(re, im);
  }
  return y;
}

VerificationReport run_identity_check(
    const std::string& label, Index dim, const VerificationSpec& spec,
    const std::function<std::pair<IdentitySide, IdentitySide>(const VectorXc&)>& build) {
  if (spec.samples < 0) throw DomainError("negative sample count");
  VerificationReport report;
  report.label = label;
  report.policy = spec.policy;
  std::mt19937_64 rng(spec.seed);
  const std::size_t total = spec.probes.size() + static_cast<std::size_t>(spec.samples);
  for (std::size_t s = 0; s < total; ++s) {
    VectorXc y = s < spec.probes.size() ? spec.probes[s] : draw_sample(rng, dim, spec.sampling);
    if (y.size() != dim) {
      throw ShapeError(label + ": probe has length " + std::to_string(y.size()) + ", expected " +
                       std::to_string(dim));
    }
    const auto [lhs, rhs] = build(y);
    const IdentityOutcome outcome = evaluate_identity(lhs, rhs, spec.policy);
    report.residuals.push_back(outcome.residual);
    report.branches.push_back(outcome.branch);
    report.max_residual = std::max(report.max_residual, outcome.residual);
    ++report.samples_run;
    if (!(outcome.residual <= spec.tol)) {
      report.pass = false;
      if (!report.witness) {
        report.witness = Witness{s, label, y, outcome.lhs, outcome.rhs, outcome.branch, outcome.residual};
      }
    }
  }
  return report;
}

VerificationReport merge_reports(const std::string& label, const std::vector<VerificationReport>& parts) {
  VerificationReport merged;
  merged.label = label;
  if (!parts.empty()) merged.policy = parts.front().policy;
  for (const auto& part : parts) {
    merged.pass = merged.pass && part.pass;
    merged.samples_run = std::max(merged.samples_run, part.samples_run);
    merged.max_residual = std::max(merged.max_residual, part.max_residual);
    if (!merged.witness && part.witness) merged.witness = part.witness;
    if (merged.residuals.size() < part.residuals.size()) {
      merged.residuals.resize(part.residuals.size(), 0.0);
      merged.branches.resize(part.residuals.size());
    }
    for (std::size_t i = 0; i < part.residuals.size(); ++i) {
      if (part.residuals[i] >= merged.residuals[i]) {
        merged.residuals[i] = part.residuals[i];
        merged.branches[i] = part.branches[i];
      }
    }
  }
  return merged;
}

namespace {

void check_chain(const Tensor& a, const Tensor& x) {
  if (a.order() < 2 || x.order() < 2) throw ShapeError("verify_inverse: tensors must have order >= 2");
  if (x.leading_dim() != a.trailing_dim() || x.trailing_dim() != a.leading_dim()) {
    throw ShapeError("verify_inverse: A is " + a.shape().to_string() + " so X must be " +
                     std::to_string(a.trailing_dim()) + " x " + std::to_string(a.leading_dim()) +
                     "^(k-1), got " + x.shape().to_string());
  }
}

}  // namespace

VerificationReport verify_inverse(const Tensor& a, const Tensor& x, const VerificationSpec& spec) {
  check_chain(a, x);
  const HomogeneousMap amap(a);
  const HomogeneousMap xmap(x);
  const HomogeneousMap ax = compose(amap, xmap);
  const std::int64_t s = ax.degree();  // (t-1)(k-1)
  const Rational root = Rational::reciprocal(s);

  const auto needs_square = [&](const char* kind) {
    if (a.leading_dim() != a.trailing_dim()) {
      throw ShapeError(std::string("verify_inverse: kind ") + kind + " needs a square A (m = n)");
    }
  };

  switch (spec.kind) {
    case GinvKind::one:
      // A X . ((A . y^(t-1))^[1/s])^s = A . y^(t-1)
      return run_identity_check("one", a.trailing_dim(), spec, [&](const VectorXc& y) {
        VectorXc b = amap(y);
        return std::pair{IdentitySide::rooted(b, root, [&](const VectorXc& w) { return ax(w); }),
                         IdentitySide::fixed(b)};
      });
    case GinvKind::two: {
      // X A X . (y^[1/s])^(s(k-1)) = X . y^(k-1)
      const HomogeneousMap xax = compose(xmap, ax);
      return run_identity_check("two", a.leading_dim(), spec, [&](const VectorXc& y) {
        return std::pair{IdentitySide::rooted(y, root, [&](const VectorXc& v) { return xax(v); }),
                         IdentitySide::fixed(xmap(y))};
      });
    }
    case GinvKind::five:
      needs_square("five");
      // A X . (y^[1/s])^s = X . ((A . y^(t-1))^[1/s])^(k-1)
      return run_identity_check("five", a.trailing_dim(), spec, [&](const VectorXc& y) {
        return std::pair{IdentitySide::rooted(y, root, [&](const VectorXc& v) { return ax(v); }),
                         IdentitySide::rooted(amap(y), root, [&](const VectorXc& w) { return xmap(w); })};
      });
    case GinvKind::group: {
      needs_square("group");
      std::vector<VerificationReport> parts;
      for (GinvKind k : {GinvKind::one, GinvKind::two, GinvKind::five}) {
        VerificationSpec sub = spec;
        sub.kind = k;
        parts.push_back(verify_inverse(a, x, sub));
      }
      return merge_reports("group", parts);
    }
  }
  throw DomainError("verify_inverse: unknown kind");
}

}  // namespace tginv
