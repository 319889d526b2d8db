#include "flasque/gmod.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <utility>

#include "flasque/error.hpp"

namespace flasque {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(trim(cur));
  return out;
}

std::uint64_t bit(std::size_t i) { return std::uint64_t{1} << i; }

}  // namespace

// ---------------------------------------------------------------------------
// FiniteGroup

FiniteGroup::FiniteGroup(std::vector<std::vector<std::size_t>> table, std::vector<GroupGenerator> generators)
    : table_(std::move(table)), generators_(std::move(generators)) {
  const std::size_t n = table_.size();
  if (n == 0) throw InputError("group table is empty");
  if (n > kMaxOrder) throw InputError("group order " + std::to_string(n) + " exceeds the cap of 64");
  for (const auto& row : table_) {
    if (row.size() != n) throw InputError("group table is not square");
    for (std::size_t v : row)
      if (v >= n) throw InputError("group table entry out of range");
  }

  bool found = false;
  for (std::size_t e = 0; e < n && !found; ++e) {
    bool ok = true;
    for (std::size_t x = 0; x < n && ok; ++x) ok = table_[e][x] == x && table_[x][e] == x;
    if (ok) {
      identity_ = e;
      found = true;
    }
  }
  if (!found) throw InputError("group table has no identity element");

  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
          throw InputError("group table is not associative");

  inverse_.assign(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (table_[a][b] == identity_ && table_[b][a] == identity_) {
        inverse_[a] = b;
        break;
      }
  for (std::size_t a = 0; a < n; ++a)
    if (inverse_[a] == n) throw InputError("element " + std::to_string(a) + " has no inverse");

  std::set<std::string> names;
  for (const auto& g : generators_) {
    if (g.index >= n) throw InputError("generator '" + g.name + "' is out of range");
    if (g.name.empty() || !names.insert(g.name).second)
      throw InputError("generator names must be nonempty and distinct");
  }

  words_.assign(n, {});
  std::vector<bool> seen(n, false);
  seen[identity_] = true;
  std::deque<std::size_t> queue{identity_};
  while (!queue.empty()) {
    const std::size_t h = queue.front();
    queue.pop_front();
    for (std::size_t s = 0; s < generators_.size(); ++s) {
      const std::size_t hs = table_[h][generators_[s].index];
      if (seen[hs]) continue;
      seen[hs] = true;
      words_[hs] = words_[h];
      words_[hs].push_back(s);
      queue.push_back(hs);
    }
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end())
    throw InputError("generators do not generate the group");
}

std::size_t FiniteGroup::element_order(std::size_t a) const {
  std::size_t k = 1;
  for (std::size_t x = a; x != identity_; x = table_[x][a]) ++k;
  return k;
}

std::optional<std::size_t> FiniteGroup::generator_position(const std::string& name) const {
  for (std::size_t i = 0; i < generators_.size(); ++i)
    if (generators_[i].name == name) return i;
  return std::nullopt;
}

std::string FiniteGroup::element_name(std::size_t g) const {
  const auto& w = words_.at(g);
  if (w.empty()) return "e";
  std::string out;
  for (std::size_t i = 0; i < w.size();) {
    std::size_t j = i;
    while (j < w.size() && w[j] == w[i]) ++j;
    if (!out.empty()) out += '*';
    out += generators_[w[i]].name;
    if (j - i > 1) out += '^' + std::to_string(j - i);
    i = j;
  }
  return out;
}

std::size_t FiniteGroup::parse_element(const std::string& text) const {
  const std::string t = trim(text);
  if (t.empty() || t == "e" || t == "1") return identity_;
  std::size_t acc = identity_;
  for (const auto& token : split(t, '*')) {
    std::string name = token;
    long power = 1;
    if (auto caret = token.find('^'); caret != std::string::npos) {
      name = trim(token.substr(0, caret));
      try {
        power = std::stol(token.substr(caret + 1));
      } catch (const std::exception&) {
        throw InputError("bad exponent in element '" + text + "'");
      }
    }
    auto pos = generator_position(name);
    if (!pos) throw InputError("unknown generator '" + name + "' in element '" + text + "'");
    std::size_t base = generators_[*pos].index;
    if (power < 0) {
      base = inverse_[base];
      power = -power;
    }
    for (long i = 0; i < power; ++i) acc = table_[acc][base];
  }
  return acc;
}

FiniteGroup group_from_abelian_invariants(const std::vector<std::size_t>& factors,
                                          const std::vector<std::string>& names) {
  if (factors.empty()) throw InputError("at least one cyclic factor is required");
  if (!names.empty() && names.size() != factors.size())
    throw InputError("one generator name per cyclic factor is required");
  std::size_t n = 1;
  for (std::size_t f : factors) {
    if (f == 0) throw InputError("cyclic factors must be positive");
    n *= f;
    if (n > FiniteGroup::kMaxOrder) throw InputError("group order exceeds the cap of 64");
  }
  const std::size_t k = factors.size();
  std::vector<std::size_t> stride(k, 1);
  for (std::size_t i = k - 1; i-- > 0;) stride[i] = stride[i + 1] * factors[i + 1];

  auto digits = [&](std::size_t x) {
    std::vector<std::size_t> d(k);
    for (std::size_t i = 0; i < k; ++i) d[i] = (x / stride[i]) % factors[i];
    return d;
  };
  std::vector<std::vector<std::size_t>> table(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a) {
    auto da = digits(a);
    for (std::size_t b = 0; b < n; ++b) {
      auto db = digits(b);
      std::size_t c = 0;
      for (std::size_t i = 0; i < k; ++i) c += ((da[i] + db[i]) % factors[i]) * stride[i];
      table[a][b] = c;
    }
  }
  std::vector<GroupGenerator> gens;
  for (std::size_t i = 0; i < k; ++i) {
    std::string name = names.empty() ? (k == 1 ? std::string("g") : "g" + std::to_string(i + 1)) : names[i];
    gens.push_back({name, factors[i] == 1 ? 0 : stride[i]});
  }
  return {std::move(table), std::move(gens)};
}

FiniteGroup cyclic_group(std::size_t n, const std::string& name) {
  return group_from_abelian_invariants({n}, {name});
}

FiniteGroup group_from_permutations(const std::vector<std::vector<std::size_t>>& perms,
                                    const std::vector<std::string>& names) {
  if (perms.empty() || names.size() != perms.size())
    throw InputError("one name per generating permutation is required");
  const std::size_t degree = perms.front().size();
  using Perm = std::vector<std::size_t>;
  for (const auto& p : perms) {
    if (p.size() != degree) throw InputError("permutations must have equal degree");
    Perm sorted = p;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < degree; ++i)
      if (sorted[i] != i) throw InputError("not a permutation");
  }
  // (p*q)(i) = p(q(i))
  auto compose = [&](const Perm& p, const Perm& q) {
    Perm r(degree);
    for (std::size_t i = 0; i < degree; ++i) r[i] = p[q[i]];
    return r;
  };
  Perm id(degree);
  for (std::size_t i = 0; i < degree; ++i) id[i] = i;
  std::set<Perm> elems{id};
  std::deque<Perm> queue{id};
  while (!queue.empty()) {
    Perm h = queue.front();
    queue.pop_front();
    for (const auto& s : perms) {
      Perm sh = compose(s, h);
      if (elems.insert(sh).second) {
        if (elems.size() > FiniteGroup::kMaxOrder) throw InputError("group order exceeds the cap of 64");
        queue.push_back(std::move(sh));
      }
    }
  }
  std::vector<Perm> list(elems.begin(), elems.end());
  std::map<Perm, std::size_t> index;
  for (std::size_t i = 0; i < list.size(); ++i) index[list[i]] = i;
  std::vector<std::vector<std::size_t>> table(list.size(), std::vector<std::size_t>(list.size()));
  for (std::size_t a = 0; a < list.size(); ++a)
    for (std::size_t b = 0; b < list.size(); ++b) table[a][b] = index.at(compose(list[a], list[b]));
  std::vector<GroupGenerator> gens;
  for (std::size_t i = 0; i < perms.size(); ++i) gens.push_back({names[i], index.at(perms[i])});
  return {std::move(table), std::move(gens)};
}

// ---------------------------------------------------------------------------
// Subgroups

namespace {

std::uint64_t closure_mask(const FiniteGroup& g, const std::vector<std::size_t>& gens) {
  std::uint64_t mask = bit(g.identity());
  std::deque<std::size_t> queue{g.identity()};
  while (!queue.empty()) {
    const std::size_t h = queue.front();
    queue.pop_front();
    for (std::size_t s : gens) {
      const std::size_t sh = g.mul(s, h);
      if (mask & bit(sh)) continue;
      mask |= bit(sh);
      queue.push_back(sh);
    }
  }
  return mask;
}

}  // namespace

Subgroup Subgroup::generated_by(const FiniteGroup& g, const std::vector<std::size_t>& gens) {
  for (std::size_t s : gens)
    if (s >= g.order()) throw InputError("subgroup generator out of range");
  Subgroup h;
  h.mask_ = closure_mask(g, gens);
  for (std::size_t x = 0; x < g.order(); ++x)
    if (h.mask_ & bit(x)) h.elements_.push_back(x);

  std::vector<std::size_t> candidates = h.elements_;
  std::stable_sort(candidates.begin(), candidates.end(), [&](std::size_t a, std::size_t b) {
    return g.element_order(a) > g.element_order(b);
  });
  std::uint64_t reached = bit(g.identity());
  for (std::size_t c : candidates) {
    if (reached & bit(c)) continue;
    h.generators_.push_back(c);
    reached = closure_mask(g, h.generators_);
    if (reached == h.mask_) break;
  }
  return h;
}

Subgroup Subgroup::from_elements(const FiniteGroup& g, std::vector<std::size_t> elements) {
  std::uint64_t mask = 0;
  for (std::size_t x : elements) {
    if (x >= g.order()) throw InputError("subgroup element out of range");
    mask |= bit(x);
  }
  if (!(mask & bit(g.identity()))) throw InputError("subset does not contain the identity");
  for (std::size_t a : elements)
    for (std::size_t b : elements)
      if (!(mask & bit(g.mul(a, b)))) throw InputError("subset is not closed under multiplication");
  return generated_by(g, elements);
}

Subgroup Subgroup::whole(const FiniteGroup& g) {
  std::vector<std::size_t> gens;
  for (const auto& s : g.generators()) gens.push_back(s.index);
  return generated_by(g, gens);
}

Subgroup Subgroup::trivial(const FiniteGroup& g) { return generated_by(g, {}); }

bool Subgroup::is_cyclic(const FiniteGroup& g) const {
  return std::any_of(elements_.begin(), elements_.end(),
                     [&](std::size_t x) { return g.element_order(x) == elements_.size(); });
}

std::string Subgroup::name(const FiniteGroup& g) const {
  if (generators_.empty()) return "1";
  std::string out = "<";
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    if (i) out += ", ";
    out += g.element_name(generators_[i]);
  }
  return out + ">";
}

std::vector<Subgroup> subgroups(const FiniteGroup& g) {
  std::vector<Subgroup> out;
  std::set<std::uint64_t> seen;
  auto add = [&](Subgroup h) {
    if (seen.insert(h.mask()).second) out.push_back(std::move(h));
  };
  add(Subgroup::trivial(g));
  for (std::size_t x = 0; x < g.order(); ++x) add(Subgroup::generated_by(g, {x}));
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (std::size_t x = 0; x < g.order(); ++x) {
      if (out[i].contains(x)) continue;
      auto gens = out[i].generators();
      gens.push_back(x);
      const std::uint64_t mask = closure_mask(g, gens);
      if (seen.count(mask)) continue;
      add(Subgroup::generated_by(g, gens));
    }
  }
  std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.elements() < b.elements();
  });
  return out;
}

Subgroup parse_subgroup(const FiniteGroup& g, const std::string& selector) {
  const std::string sel = trim(selector);
  if (sel == "G" || sel == "whole") return Subgroup::whole(g);
  if (sel == "1" || sel == "trivial") return Subgroup::trivial(g);
  std::string body = sel;
  if (!body.empty() && body.front() == '<' && body.back() == '>') body = body.substr(1, body.size() - 2);
  std::vector<std::size_t> gens;
  for (const auto& token : split(body, ',')) gens.push_back(g.parse_element(token));
  return Subgroup::generated_by(g, gens);
}

// ---------------------------------------------------------------------------
// GLattice

GLattice::GLattice(FiniteGroup group, std::size_t rank, std::vector<IntMatrix> generator_action,
                   std::vector<std::string> labels)
    : group_(std::move(group)), rank_(rank), gen_action_(std::move(generator_action)), labels_(std::move(labels)) {
  if (gen_action_.size() != group_.generators().size())
    throw InputError("expected one action matrix per group generator");
  for (std::size_t i = 0; i < gen_action_.size(); ++i)
    if (gen_action_[i].rows() != rank_ || gen_action_[i].cols() != rank_)
      throw InputError("action matrix for '" + group_.generators()[i].name + "' has the wrong shape");
  if (!labels_.empty() && labels_.size() != rank_) throw InputError("one basis label per basis vector is required");

  const std::size_t n = group_.order();
  element_action_.assign(n, IntMatrix());
  std::vector<bool> seen(n, false);
  element_action_[group_.identity()] = IntMatrix::identity(rank_);
  seen[group_.identity()] = true;
  std::deque<std::size_t> queue{group_.identity()};
  while (!queue.empty()) {
    const std::size_t h = queue.front();
    queue.pop_front();
    for (std::size_t s = 0; s < gen_action_.size(); ++s) {
      const std::size_t sh = group_.mul(group_.generators()[s].index, h);
      if (seen[sh]) continue;
      seen[sh] = true;
      element_action_[sh] = gen_action_[s] * element_action_[h];
      queue.push_back(sh);
    }
  }
  for (std::size_t s = 0; s < gen_action_.size(); ++s)
    for (std::size_t h = 0; h < n; ++h) {
      const std::size_t sh = group_.mul(group_.generators()[s].index, h);
      if (gen_action_[s] * element_action_[h] != element_action_[sh])
        throw InputError("action matrices violate the group law at generator '" + group_.generators()[s].name +
                         "' and element " + group_.element_name(h));
    }
}

std::string GLattice::label(std::size_t i) const {
  if (i < labels_.size()) return labels_[i];
  return "x" + std::to_string(i);
}

bool is_equivariant(const GLattice& source, const GLattice& target, const IntMatrix& m) {
  if (!(source.group() == target.group())) return false;
  if (m.rows() != target.rank() || m.cols() != source.rank()) return false;
  for (std::size_t s = 0; s < source.generator_actions().size(); ++s)
    if (m * source.generator_action(s) != target.generator_action(s) * m) return false;
  return true;
}

GLatticeMap::GLatticeMap(GLattice src, GLattice dst, IntMatrix m)
    : source(std::move(src)), target(std::move(dst)), matrix(std::move(m)) {
  if (!(source.group() == target.group())) throw InputError("map between lattices over different groups");
  if (matrix.rows() != target.rank() || matrix.cols() != source.rank())
    throw InputError("map matrix has the wrong shape");
  if (!is_equivariant(source, target, matrix)) throw InputError("map is not equivariant");
}

GLattice trivial_lattice(const FiniteGroup& g, std::size_t rank) {
  return {g, rank, std::vector<IntMatrix>(g.generators().size(), IntMatrix::identity(rank))};
}

GLattice sign_lattice(const FiniteGroup& g, const std::vector<int>& signs) {
  if (signs.size() != g.generators().size()) throw InputError("one sign per generator is required");
  std::vector<IntMatrix> act;
  for (int s : signs) {
    if (s != 1 && s != -1) throw InputError("signs must be +1 or -1");
    act.push_back(IntMatrix{{s}});
  }
  return {g, 1, std::move(act)};
}

GLattice permutation_module(const FiniteGroup& g, const Subgroup& h) {
  const std::size_t n = g.order();
  for (std::size_t a : h.elements())
    for (std::size_t b : h.elements())
      if (!h.contains(g.mul(a, b))) throw InputError("not a subgroup");
  std::vector<std::size_t> coset_of(n, n);
  std::vector<std::size_t> reps;
  for (std::size_t x = 0; x < n; ++x) {
    if (coset_of[x] != n) continue;
    for (std::size_t y : h.elements()) coset_of[g.mul(x, y)] = reps.size();
    reps.push_back(x);
  }
  const std::size_t rank = reps.size();
  std::vector<IntMatrix> act;
  for (const auto& s : g.generators()) {
    IntMatrix m(rank, rank);
    for (std::size_t j = 0; j < rank; ++j) m(coset_of[g.mul(s.index, reps[j])], j) = 1;
    act.push_back(std::move(m));
  }
  std::vector<std::string> labels;
  for (std::size_t r : reps) labels.push_back(g.element_name(r) + (h.size() > 1 ? "H" : ""));
  return {g, rank, std::move(act), std::move(labels)};
}

GLattice dual(const GLattice& x) {
  std::vector<IntMatrix> act;
  for (const auto& s : x.group().generators()) act.push_back(x.action(x.group().inverse(s.index)).transpose());
  return {x.group(), x.rank(), std::move(act), x.labels()};
}

FiniteGroup subgroup_as_group(const FiniteGroup& g, const Subgroup& h) {
  const auto& el = h.elements();
  std::vector<std::size_t> pos(g.order(), g.order());
  for (std::size_t i = 0; i < el.size(); ++i) pos[el[i]] = i;
  std::vector<std::vector<std::size_t>> table(el.size(), std::vector<std::size_t>(el.size()));
  for (std::size_t a = 0; a < el.size(); ++a)
    for (std::size_t b = 0; b < el.size(); ++b) {
      const std::size_t p = pos[g.mul(el[a], el[b])];
      if (p == g.order()) throw InputError("not a subgroup");
      table[a][b] = p;
    }
  std::vector<GroupGenerator> gens;
  for (std::size_t s : h.generators()) gens.push_back({g.element_name(s), pos[s]});
  return {std::move(table), std::move(gens)};
}

GLattice restrict(const GLattice& x, const Subgroup& h) {
  FiniteGroup sub = subgroup_as_group(x.group(), h);
  std::vector<IntMatrix> act;
  for (std::size_t s : h.generators()) act.push_back(x.action(s));
  return {std::move(sub), x.rank(), std::move(act), x.labels()};
}

IntMatrix invariants_sublattice(const GLattice& x, const Subgroup& h) {
  const IntMatrix id = IntMatrix::identity(x.rank());
  IntMatrix stacked(0, x.rank());
  for (std::size_t s : h.generators()) stacked = stacked.vstack(x.action(s) - id);
  return lin::kernel_basis(stacked);
}

GLattice direct_sum(const GLattice& x, const GLattice& y) {
  if (!(x.group() == y.group())) throw InputError("direct sum of lattices over different groups");
  std::vector<IntMatrix> act;
  for (std::size_t s = 0; s < x.generator_actions().size(); ++s)
    act.push_back(IntMatrix::block_diag(x.generator_action(s), y.generator_action(s)));
  std::vector<std::string> labels;
  if (!x.labels().empty() || !y.labels().empty()) {
    for (std::size_t i = 0; i < x.rank(); ++i) labels.push_back(x.label(i));
    for (std::size_t i = 0; i < y.rank(); ++i) labels.push_back(y.label(i));
  }
  return {x.group(), x.rank() + y.rank(), std::move(act), std::move(labels)};
}

GLattice change_basis(const GLattice& x, const IntMatrix& p) {
  if (p.rows() != x.rank() || p.cols() != x.rank()) throw InputError("change of basis has the wrong shape");
  if (abs(lin::determinant(p)) != 1) throw InputError("change of basis is not unimodular");
  std::vector<IntMatrix> act;
  for (const auto& a : x.generator_actions()) act.push_back(lin::coordinates(p, a * p));
  return {x.group(), x.rank(), std::move(act)};
}

GLattice ind_copies(const GLattice& x, const BasisRoles& roles, std::size_t k) {
  if (k == 0) throw InputError("ind_copies needs at least one copy");
  const std::size_t r = roles.replicated.size();
  const std::size_t f = roles.fixed.size();
  std::vector<int> seen(x.rank(), 0);
  for (std::size_t i : roles.replicated)
    if (i >= x.rank() || seen[i]++) throw InputError("basis roles do not partition the basis");
  for (std::size_t i : roles.fixed)
    if (i >= x.rank() || seen[i]++) throw InputError("basis roles do not partition the basis");
  if (r + f != x.rank()) throw InputError("basis roles do not partition the basis");

  const std::size_t rank = k * r + f;
  std::vector<IntMatrix> act;
  for (const auto& a : x.generator_actions()) {
    for (std::size_t u = 0; u < f; ++u)
      for (std::size_t t = 0; t < r; ++t)
        if (a(roles.replicated[t], roles.fixed[u]) != 0)
          throw InputError("fixed basis vector " + x.label(roles.fixed[u]) + " maps into the replicated part");
    IntMatrix m(rank, rank);
    for (std::size_t c = 0; c < k; ++c)
      for (std::size_t t = 0; t < r; ++t) {
        const std::size_t col = c * r + t;
        for (std::size_t t2 = 0; t2 < r; ++t2) m(c * r + t2, col) = a(roles.replicated[t2], roles.replicated[t]);
        for (std::size_t u = 0; u < f; ++u) m(k * r + u, col) = a(roles.fixed[u], roles.replicated[t]);
      }
    for (std::size_t u = 0; u < f; ++u)
      for (std::size_t u2 = 0; u2 < f; ++u2) m(k * r + u2, k * r + u) = a(roles.fixed[u2], roles.fixed[u]);
    act.push_back(std::move(m));
  }
  std::vector<std::string> labels;
  for (std::size_t c = 0; c < k; ++c)
    for (std::size_t t = 0; t < r; ++t)
      labels.push_back(k == 1 ? x.label(roles.replicated[t]) : x.label(roles.replicated[t]) + "_" + std::to_string(c + 1));
  for (std::size_t u = 0; u < f; ++u) labels.push_back(x.label(roles.fixed[u]));
  if (x.labels().empty() && k == 1) labels.clear();
  return {x.group(), rank, std::move(act), std::move(labels)};
}

GLattice induced_on_sublattice(const GLattice& x, const IntMatrix& basis, std::vector<std::string> labels) {
  if (basis.rows() != x.rank()) throw InputError("sublattice basis has the wrong ambient rank");
  std::vector<IntMatrix> act;
  for (const auto& a : x.generator_actions()) act.push_back(lin::coordinates(basis, a * basis));
  return {x.group(), basis.cols(), std::move(act), std::move(labels)};
}

// ---------------------------------------------------------------------------
// Finite modules and quasitrivial covers

FiniteGModule::FiniteGModule(FiniteGroup group, std::vector<BigInt> factors, std::vector<IntMatrix> generator_action)
    : group_(std::move(group)), factors_(std::move(factors)) {
  const std::size_t k = factors_.size();
  for (const auto& d : factors_)
    if (d < 1) throw InputError("finite module factors must be positive");
  if (generator_action.size() != group_.generators().size())
    throw InputError("expected one action matrix per group generator");
  for (auto& a : generator_action) {
    if (a.rows() != k || a.cols() != k) throw InputError("finite module action has the wrong shape");
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j)
        if ((a(i, j) * factors_[j]) % factors_[i] != 0)
          throw InputError("action does not respect the invariant factors");
    a = reduce_matrix(a);
  }
  const std::size_t n = group_.order();
  element_action_.assign(n, IntMatrix());
  element_action_[group_.identity()] = reduce_matrix(IntMatrix::identity(k));
  std::vector<bool> seen(n, false);
  seen[group_.identity()] = true;
  std::deque<std::size_t> queue{group_.identity()};
  while (!queue.empty()) {
    const std::size_t h = queue.front();
    queue.pop_front();
    for (std::size_t s = 0; s < generator_action.size(); ++s) {
      const std::size_t sh = group_.mul(group_.generators()[s].index, h);
      if (seen[sh]) continue;
      seen[sh] = true;
      element_action_[sh] = reduce_matrix(generator_action[s] * element_action_[h]);
      queue.push_back(sh);
    }
  }
  for (std::size_t s = 0; s < generator_action.size(); ++s)
    for (std::size_t h = 0; h < n; ++h) {
      const std::size_t sh = group_.mul(group_.generators()[s].index, h);
      if (reduce_matrix(generator_action[s] * element_action_[h]) != element_action_[sh])
        throw InputError("finite module action violates the group law");
    }
}

IntMatrix FiniteGModule::reduce_matrix(IntMatrix m) const {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      BigInt r;
      mpz_fdiv_r(r.get_mpz_t(), m(i, j).get_mpz_t(), factors_[i].get_mpz_t());
      m(i, j) = r;
    }
  return m;
}

std::vector<BigInt> FiniteGModule::reduce(std::vector<BigInt> v) const {
  for (std::size_t i = 0; i < v.size(); ++i) mpz_fdiv_r(v[i].get_mpz_t(), v[i].get_mpz_t(), factors_[i].get_mpz_t());
  return v;
}

BigInt FiniteGModule::order() const {
  BigInt n = 1;
  for (const auto& d : factors_) n *= d;
  return n;
}

QuasitrivialCover quasitrivial_cover(const FiniteGModule& a) {
  const FiniteGroup& g = a.group();
  const std::size_t k = a.factors().size();
  GLattice p = trivial_lattice(g, 0);
  std::vector<std::vector<BigInt>> columns;
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<BigInt> unit(k);
    unit[i] = 1;
    unit = a.reduce(unit);
    std::vector<std::size_t> stab;
    for (std::size_t x = 0; x < g.order(); ++x)
      if (a.reduce(a.action(x).col(i)) == unit) stab.push_back(x);
    Subgroup h = Subgroup::from_elements(g, stab);
    GLattice block = permutation_module(g, h);
    std::vector<bool> used(g.order(), false);
    for (std::size_t x = 0; x < g.order(); ++x) {
      if (used[x]) continue;
      for (std::size_t y : h.elements()) used[g.mul(x, y)] = true;
      columns.push_back(a.reduce(a.action(x).col(i)));
    }
    p = direct_sum(p, block);
  }
  IntMatrix proj(k, p.rank());
  for (std::size_t j = 0; j < columns.size(); ++j)
    for (std::size_t i = 0; i < k; ++i) proj(i, j) = columns[j][i];

  IntMatrix relation = proj;
  IntMatrix torsion(k, k);
  for (std::size_t i = 0; i < k; ++i) torsion(i, i) = -a.factors()[i];
  relation = relation.hstack(torsion);
  IntMatrix ker = lin::kernel_basis(relation);
  IntMatrix basis = lin::column_hermite_basis(ker.row_range(0, p.rank()));
  GLattice xt = induced_on_sublattice(p, basis);
  return {std::move(p), std::move(proj), std::move(xt), std::move(basis)};
}

}  // namespace flasque
