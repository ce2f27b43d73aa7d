#include "hyperg/subobjects.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace hyperg {

namespace {

using Cx = std::complex<double>;

std::vector<int> sorted_unique(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

bool is_closed_subset(const FiniteHypergroup& k, const std::vector<int>& members, double tol) {
  if (members.empty()) return false;
  std::set<int> h(members.begin(), members.end());
  if (!h.count(0)) return false;
  for (int x : h) {
    if (x < 0 || x >= k.order()) return false;
    if (!h.count(k.involution(x))) return false;
  }
  for (int x : h)
    for (int y : h)
      for (int z = 0; z < k.order(); ++z)
        if (k.n(x, y, z) > tol && !h.count(z)) return false;
  return true;
}

Subhypergroup certify_subhypergroup(const FiniteHypergroup& k, std::vector<int> members, double tol) {
  members = sorted_unique(std::move(members));
  if (!is_closed_subset(k, members, tol))
    throw HyperError(Errc::NotClosed, "subset is not a subhypergroup");
  return Subhypergroup{std::move(members)};
}

std::vector<int> closure(const FiniteHypergroup& k, std::vector<int> seeds, double tol) {
  std::set<int> h(seeds.begin(), seeds.end());
  h.insert(0);
  for (;;) {
    std::set<int> next = h;
    for (int x : h) next.insert(k.involution(x));
    for (int x : h)
      for (int y : h)
        for (int z = 0; z < k.order(); ++z)
          if (k.n(x, y, z) > tol) next.insert(z);
    if (next.size() == h.size()) break;
    h.swap(next);
  }
  return {h.begin(), h.end()};
}

std::vector<Subhypergroup> enumerate_subhypergroups(const FiniteHypergroup& k,
                                                    const EnumerateOptions& opts) {
  if (k.order() > opts.cap)
    throw HyperError(Errc::CapExceeded, "order " + std::to_string(k.order()) +
                                            " exceeds enumeration cap " + std::to_string(opts.cap));
  // every closed H is reached from {e} by adding its own elements one at a
  // time, so a worklist over (closed set, extra generator) finds them all
  std::set<std::vector<int>> found;
  std::vector<std::vector<int>> work;
  std::vector<int> base = closure(k, {}, opts.tol);
  found.insert(base);
  work.push_back(base);
  while (!work.empty()) {
    std::vector<int> cur = std::move(work.back());
    work.pop_back();
    std::set<int> cur_set(cur.begin(), cur.end());
    for (int x = 0; x < k.order(); ++x) {
      if (cur_set.count(x)) continue;
      std::vector<int> seeds = cur;
      seeds.push_back(x);
      std::vector<int> grown = closure(k, std::move(seeds), opts.tol);
      if (found.insert(grown).second) work.push_back(grown);
    }
  }
  std::vector<Subhypergroup> out;
  out.reserve(found.size());
  for (const auto& m : found) out.push_back(Subhypergroup{m});
  std::sort(out.begin(), out.end(), [](const Subhypergroup& a, const Subhypergroup& b) {
    if (a.members.size() != b.members.size()) return a.members.size() < b.members.size();
    return a.members < b.members;
  });
  return out;
}

CosetPartition cosets(const FiniteHypergroup& k, const Subhypergroup& h, double tol) {
  const int n = k.order();
  CosetPartition part;
  part.block_of.assign(n, -1);
  std::map<std::vector<int>, int> index_of;
  std::vector<std::vector<int>> raw_blocks;
  for (int c = 0; c < n; ++c) {
    std::vector<int> cs = {c};
    std::vector<int> blk = support_product(k, cs, h.members, tol);
    auto [it, fresh] = index_of.try_emplace(blk, static_cast<int>(raw_blocks.size()));
    if (fresh) raw_blocks.push_back(blk);
    part.block_of[c] = it->second;
  }
  // distinct blocks must be disjoint and every element must sit in its own block
  std::vector<int> owner(n, -1);
  for (int b = 0; b < static_cast<int>(raw_blocks.size()); ++b)
    for (int x : raw_blocks[b]) {
      if (owner[x] >= 0 && owner[x] != b)
        throw HyperError(Errc::NotAPartition, "cosets overlap at element " + std::to_string(x));
      owner[x] = b;
    }
  for (int x = 0; x < n; ++x)
    if (owner[x] != part.block_of[x])
      throw HyperError(Errc::NotAPartition, "element " + std::to_string(x) + " is not in its own coset");

  // order blocks by representative; block of e (= H) has representative 0
  std::vector<int> order(raw_blocks.size());
  for (std::size_t b = 0; b < raw_blocks.size(); ++b) order[b] = static_cast<int>(b);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return raw_blocks[a][0] < raw_blocks[b][0]; });
  std::vector<int> rank(raw_blocks.size());
  for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = static_cast<int>(i);
  part.blocks.resize(raw_blocks.size());
  part.representative.resize(raw_blocks.size());
  part.block_mass.resize(raw_blocks.size());
  for (std::size_t b = 0; b < raw_blocks.size(); ++b) {
    part.blocks[rank[b]] = raw_blocks[b];
    part.representative[rank[b]] = raw_blocks[b][0];
    double mass = 0.0;
    for (int x : raw_blocks[b]) mass += k.haar(x);
    part.block_mass[rank[b]] = mass;
  }
  for (int x = 0; x < n; ++x) part.block_of[x] = rank[part.block_of[x]];
  return part;
}

Annihilator annihilator(const FiniteHypergroup& k, const CharacterTable& table,
                        const Subhypergroup& h, double tol) {
  (void)k;
  Annihilator a;
  for (int r = 0; r < table.order(); ++r) {
    bool in = true;
    for (int x : h.members)
      if (std::abs(table.value(r, x) - 1.0) > tol) {
        in = false;
        break;
      }
    if (in) a.characters.push_back(r);
  }
  return a;
}

FiniteHypergroup quotient(const FiniteHypergroup& k, const Subhypergroup& h, double tol) {
  CosetPartition part = cosets(k, h, tol);
  const int m = static_cast<int>(part.blocks.size());
  auto normalized_indicator = [&](int b) {
    Measure p(k.order());
    for (int x : part.blocks[b]) p.weights[x] = k.haar(x) / part.block_mass[b];
    return p;
  };
  StructureTensor t(m);
  for (int a = 0; a < m; ++a) {
    Measure pa = normalized_indicator(a);
    for (int b = 0; b < m; ++b) {
      Measure conv = convolve(k, pa, normalized_indicator(b));
      for (int x = 0; x < k.order(); ++x) t.at(a, b, part.block_of[x]) += conv.weights[x];
    }
  }
  std::vector<int> inv(m);
  for (int b = 0; b < m; ++b) inv[b] = part.block_of[k.involution(part.representative[b])];
  return validate_or_throw(t, inv, k.name().empty() ? "quotient" : k.name() + "/H",
                           ValidateOptions{tol});
}

AnnihilatorEquivalenceReport annihilator_equivalence_check(const FiniteHypergroup& k, const CharacterTable& table,
                            const Subhypergroup& h, double tol) {
  CosetPartition part = cosets(k, h, tol);
  Annihilator ann = annihilator(k, table, h, tol);
  std::set<int> in_ann(ann.characters.begin(), ann.characters.end());

  AnnihilatorEquivalenceReport rep;
  const int nchar = table.order();
  rep.in_annihilator.resize(nchar);
  rep.all_cosets_nonzero.resize(nchar);
  rep.some_coset_nonzero.resize(nchar);
  for (int r = 0; r < nchar; ++r) {
    rep.in_annihilator[r] = in_ann.count(r) > 0;
    bool all_nonzero = true;
    int zero_block = -1;
    bool some_nonzero = false;
    for (std::size_t b = 0; b < part.blocks.size(); ++b) {
      Cx sum_bar = 0.0, sum_plain = 0.0;
      for (int x : part.blocks[b]) {
        sum_bar += k.haar(x) * table.value(r, k.involution(x));
        sum_plain += k.haar(x) * table.value(r, x);
      }
      const double floor = tol * part.block_mass[b];
      if (std::abs(sum_bar) <= floor && all_nonzero) {
        all_nonzero = false;
        zero_block = static_cast<int>(b);
      }
      if (std::abs(sum_plain) > floor) some_nonzero = true;
    }
    rep.all_cosets_nonzero[r] = all_nonzero;
    rep.some_coset_nonzero[r] = some_nonzero;
    if (rep.in_annihilator[r] != all_nonzero || rep.in_annihilator[r] != some_nonzero)
      rep.offenders.push_back({r, zero_block});
  }
  return rep;
}

void annihilator_equivalence_or_throw(const FiniteHypergroup& k, const CharacterTable& table,
                            const Subhypergroup& h, double tol) {
  AnnihilatorEquivalenceReport rep = annihilator_equivalence_check(k, table, h, tol);
  if (!rep.equivalent()) {
    const auto& o = rep.offenders.front();
    throw HyperError(Errc::EquivalenceFailure,
                     "conditions disagree for character " + std::to_string(o.character) +
                         " at coset block " + std::to_string(o.block));
  }
}

std::vector<Cx> subgroup_haar_transform(const FiniteHypergroup& k, const CharacterTable& table,
                                        const Subhypergroup& h) {
  double mass = 0.0;
  for (int x : h.members) mass += k.haar(x);
  std::vector<Cx> out(table.order(), 0.0);
  for (int r = 0; r < table.order(); ++r) {
    for (int x : h.members) out[r] += k.haar(x) * table.value(r, x);
    out[r] /= mass;
  }
  return out;
}

FiniteHypergroup sub_hypergroup(const FiniteHypergroup& k, const Subhypergroup& h, double tol) {
  const int m = static_cast<int>(h.members.size());
  std::vector<int> pos(k.order(), -1);
  for (int i = 0; i < m; ++i) pos[h.members[i]] = i;
  if (m == 0 || h.members[0] != 0)
    throw HyperError(Errc::NotClosed, "subset does not contain the identity");
  StructureTensor t(m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      double row = 0.0;
      for (int c = 0; c < m; ++c) {
        t.at(a, b, c) = k.n(h.members[a], h.members[b], h.members[c]);
        row += t.at(a, b, c);
      }
      if (std::abs(row - 1.0) > tol)
        throw HyperError(Errc::NotClosed, "restricted row (" + std::to_string(h.members[a]) + "," +
                                              std::to_string(h.members[b]) +
                                              ") is not stochastic; subset is not closed");
    }
  std::vector<int> inv(m);
  for (int a = 0; a < m; ++a) {
    int img = pos[k.involution(h.members[a])];
    if (img < 0) throw HyperError(Errc::NotClosed, "subset is not involution-closed");
    inv[a] = img;
  }
  return validate_or_throw(t, inv, k.name().empty() ? "sub" : k.name() + "|H", ValidateOptions{tol});
}

std::vector<Cx> restrict_character(const FiniteHypergroup& k, const CharacterTable& table, int rho,
                                   const Subhypergroup& h, double tol) {
  FiniteHypergroup sub = sub_hypergroup(k, h, tol);
  std::vector<Cx> vals(h.members.size());
  for (std::size_t i = 0; i < h.members.size(); ++i) vals[i] = table.value(rho, h.members[i]);
  // restriction of a character is a character of the restricted hypergroup
  for (std::size_t x = 0; x < vals.size(); ++x)
    for (std::size_t y = 0; y < vals.size(); ++y) {
      Cx lhs = eval_translated(sub, vals, static_cast<int>(x), static_cast<int>(y));
      if (std::abs(lhs - vals[x] * vals[y]) > 1e-8)
        throw HyperError(Errc::NotClosed, "restricted values fail the character equations");
    }
  return vals;
}

}  // namespace hyperg
