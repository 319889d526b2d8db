#include "flasque/tate.hpp"

#include <sstream>

#include "flasque/error.hpp"

namespace flasque {
namespace {

void require_subgroup(const GLattice& x, const Subgroup& h) {
  for (std::size_t e : h.elements())
    if (e >= x.group().order()) throw InputError("subgroup does not belong to the lattice's group");
}

// Columns spanning I_H X: (s - 1) X over the subgroup generators s.
IntMatrix augmentation_span(const GLattice& x, const Subgroup& h) {
  const IntMatrix id = IntMatrix::identity(x.rank());
  IntMatrix span(x.rank(), 0);
  for (std::size_t s : h.generators()) span = span.hstack(x.action(s) - id);
  return span;
}

PredicateReport sweep_predicate(const GLattice& x, int degree, Execution mode) {
  const auto subs = subgroups(x.group());
  PredicateReport report;
  report.per_subgroup = cohomology_sweep(x, subs, degree, mode);
  for (std::size_t i = 0; i < report.per_subgroup.size(); ++i)
    if (!report.per_subgroup[i].result.is_trivial()) {
      report.holds = false;
      if (!report.witness) report.witness = i;
    }
  return report;
}

}  // namespace

IntMatrix norm_matrix(const GLattice& x, const Subgroup& h) {
  require_subgroup(x, h);
  IntMatrix n(x.rank(), x.rank());
  for (std::size_t e : h.elements()) n = n + x.action(e);
  return n;
}

FiniteAbelianGroup tate_minus1(const GLattice& x, const Subgroup& h) {
  if (h.size() <= 1 || x.rank() == 0) return {};
  IntMatrix kernel = lin::kernel_basis(norm_matrix(x, h));
  return lin::sublattice_quotient(x.rank(), kernel, augmentation_span(x, h));
}

FiniteAbelianGroup tate_0(const GLattice& x, const Subgroup& h) {
  if (h.size() <= 1 || x.rank() == 0) return {};
  IntMatrix fixed = invariants_sublattice(x, h);
  return lin::sublattice_quotient(x.rank(), fixed, norm_matrix(x, h));
}

FiniteAbelianGroup h1(const GLattice& x, const Subgroup& h) {
  require_subgroup(x, h);
  if (h.size() <= 1 || x.rank() == 0) return {};
  const FiniteGroup& g = x.group();
  const std::size_t r = x.rank();
  const auto& el = h.elements();
  const std::size_t n = el.size();
  std::vector<std::size_t> pos(g.order(), n);
  for (std::size_t i = 0; i < n; ++i) pos[el[i]] = i;

  // Unknowns f(h) for every h in H, stacked in element order. Equations:
  // f(e) = 0 and f(s h) = f(s) + s f(h) for generators s of H.
  std::size_t rows = r + h.generators().size() * n * r;
  IntMatrix eq(rows, n * r);
  std::size_t row = 0;
  for (std::size_t i = 0; i < r; ++i) eq(row++, pos[g.identity()] * r + i) = 1;
  for (std::size_t s : h.generators()) {
    const IntMatrix& a = x.action(s);
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t sh = pos[g.mul(s, el[k])];
      for (std::size_t i = 0; i < r; ++i, ++row) {
        eq(row, sh * r + i) += 1;
        eq(row, pos[s] * r + i) -= 1;
        for (std::size_t j = 0; j < r; ++j) eq(row, k * r + j) -= a(i, j);
      }
    }
  }
  IntMatrix cocycles = lin::kernel_basis(eq);

  IntMatrix coboundaries(n * r, r);
  const IntMatrix id = IntMatrix::identity(r);
  for (std::size_t k = 0; k < n; ++k) {
    IntMatrix d = x.action(el[k]) - id;
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) coboundaries(k * r + i, j) = d(i, j);
  }
  return lin::sublattice_quotient(n * r, cocycles, coboundaries);
}

FiniteAbelianGroup cohomology(const GLattice& x, const Subgroup& h, int degree) {
  switch (degree) {
    case -1:
      return tate_minus1(x, h);
    case 0:
      return tate_0(x, h);
    case 1:
      return h1(x, h);
    default:
      throw InputError("cohomological degree must be -1, 0 or 1");
  }
}

std::vector<CohomologyReport> cohomology_sweep(const GLattice& x, const std::vector<Subgroup>& subs, int degree,
                                               Execution mode) {
  if (degree < -1 || degree > 1) throw InputError("cohomological degree must be -1, 0 or 1");
  auto groups = map_subgroups(subs, [&](const Subgroup& h) { return cohomology(x, h, degree); }, mode);
  std::vector<CohomologyReport> out;
  out.reserve(subs.size());
  for (std::size_t i = 0; i < subs.size(); ++i)
    out.push_back({subs[i].name(x.group()), subs[i].size(), degree, std::move(groups[i])});
  return out;
}

PredicateReport is_flasque(const GLattice& x, Execution mode) { return sweep_predicate(x, -1, mode); }

PredicateReport is_coflasque(const GLattice& x, Execution mode) { return sweep_predicate(x, 1, mode); }

bool is_permutation_matrix(const IntMatrix& m) {
  if (m.rows() != m.cols()) return false;
  std::vector<int> col_hits(m.cols(), 0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    int row_hits = 0;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j) == 0) continue;
      if (m(i, j) != 1) return false;
      ++row_hits;
      ++col_hits[j];
    }
    if (row_hits != 1) return false;
  }
  for (int c : col_hits)
    if (c != 1) return false;
  return true;
}

bool ResolutionCheck::passed() const {
  for (const auto& it : items)
    if (!it.passed) return false;
  for (const auto& it : dual_surjectivity)
    if (!it.passed) return false;
  return flasque_s.holds;
}

ResolutionCheck check_flasque_resolution(const GLattice& xt, const GLattice& xq, const GLattice& xs,
                                         const IntMatrix& incl, const IntMatrix& quot, Execution mode) {
  if (!(xt.group() == xq.group()) || !(xq.group() == xs.group()))
    throw InputError("resolution lattices are defined over different groups");
  if (incl.rows() != xq.rank() || incl.cols() != xt.rank())
    throw InputError("inclusion matrix must be rank(XQ) x rank(XT)");
  if (quot.rows() != xs.rank() || quot.cols() != xq.rank())
    throw InputError("quotient matrix must be rank(XS) x rank(XQ)");

  ResolutionCheck check;
  auto add = [&](std::string name, bool ok, std::string detail = {}) {
    check.items.push_back({std::move(name), ok, std::move(detail)});
  };

  const bool incl_eq = is_equivariant(xt, xq, incl);
  const bool quot_eq = is_equivariant(xq, xs, quot);
  add("inclusion equivariant", incl_eq);
  add("quotient equivariant", quot_eq);
  add("composite is zero", (quot * incl).is_zero());

  const bool injective = lin::rank(incl) == xt.rank();
  add("inclusion injective", injective);

  IntMatrix kernel = lin::kernel_basis(quot);
  const bool exact_middle = lin::same_lattice(incl, kernel);
  add("image equals kernel", exact_middle,
      exact_middle ? "" : "image has index " + lin::sublattice_quotient(xq.rank(), kernel.hstack(incl), incl).to_string() +
                               " in the kernel span");

  FiniteAbelianGroup coker = lin::cokernel(quot);
  add("quotient surjective", coker.is_trivial(), coker.is_trivial() ? "" : "cokernel " + coker.to_string());

  bool perm = true;
  for (const auto& a : xq.generator_actions()) perm = perm && is_permutation_matrix(a);
  add("middle lattice is a permutation lattice", perm);

  if (incl_eq) {
    const GLattice xq_dual = dual(xq);
    const GLattice xt_dual = dual(xt);
    const IntMatrix restriction = incl.transpose();
    const auto subs = subgroups(xt.group());
    auto results = map_subgroups(
        subs,
        [&](const Subgroup& h) {
          IntMatrix source = invariants_sublattice(xq_dual, h);
          IntMatrix target = invariants_sublattice(xt_dual, h);
          IntMatrix image = restriction * source;
          if (target.cols() == 0) return FiniteAbelianGroup{};
          return lin::cokernel(lin::coordinates(target, image));
        },
        mode);
    for (std::size_t i = 0; i < subs.size(); ++i)
      check.dual_surjectivity.push_back({subs[i].name(xt.group()), results[i].is_trivial(),
                                         results[i].is_trivial() ? "" : "cokernel " + results[i].to_string()});
  } else {
    check.dual_surjectivity.push_back({"all", false, "skipped: inclusion is not equivariant"});
  }

  check.flasque_s = is_flasque(xs, mode);
  return check;
}

FlasqueResolution construct_flasque_resolution(const GLattice& xt) {
  const FiniteGroup& g = xt.group();
  const GLattice y = dual(xt);
  const std::size_t r = y.rank();
  auto subs = subgroups(g);

  GLattice qstar = trivial_lattice(g, 0);
  IntMatrix phi(r, 0);

  for (auto it = subs.rbegin(); it != subs.rend(); ++it) {
    const Subgroup& h = *it;
    const IntMatrix fixed = invariants_sublattice(y, h);
    for (std::size_t c = 0; c < fixed.cols(); ++c) {
      const auto target = fixed.col(c);
      IntMatrix image = lin::column_hermite_basis(phi * invariants_sublattice(qstar, h));
      std::vector<BigInt> coeffs;
      if (image.cols() > 0 && lin::solve_in_lattice(image, target, coeffs)) continue;

      GLattice block = permutation_module(g, h);
      IntMatrix images(r, block.rank());
      std::vector<bool> used(g.order(), false);
      std::size_t col = 0;
      for (std::size_t x = 0; x < g.order(); ++x) {
        if (used[x]) continue;
        for (std::size_t e : h.elements()) used[g.mul(x, e)] = true;
        images.set_col(col++, y.action(x).apply(target));
      }
      qstar = direct_sum(qstar, block);
      phi = phi.hstack(images);
    }
  }

  IntMatrix kernel = lin::kernel_basis(phi);
  GLattice k_lattice = induced_on_sublattice(qstar, kernel);
  FlasqueResolution res;
  res.XT = xt;
  res.XQ = dual(qstar);
  res.XS = dual(k_lattice);
  res.incl = phi.transpose();
  res.quot = kernel.transpose();
  return res;
}

}  // namespace flasque
