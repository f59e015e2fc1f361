#include "caforge/stage2.hpp"

#include <algorithm>
#include <set>

namespace caforge {

namespace {

void apply(std::span<const Symbol> perm, std::span<const Symbol> in, std::vector<Symbol>& out) {
  out.resize(in.size());
  for (std::size_t i = 0; i < in.size(); ++i) out[i] = perm[in[i]];
}

Array fill_rows(const PartialArray& rows, std::size_t k, unsigned v, Rng& rng) {
  Array out(rows.size(), k);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    auto dst = out.row(r);
    for (std::size_t c = 0; c < k; ++c)
      dst[c] = rows[r].is_fixed(c) ? static_cast<Symbol>(rows[r][c]) : rng.symbol(v);
  }
  return out;
}

void check_item(const Interaction& it, const OrbitTable& table) {
  const auto& p = table.params();
  if (it.columns.size() != p.t || it.symbols.size() != p.t)
    throw InvalidArgument("interaction must have exactly t columns");
  for (std::size_t i = 0; i < p.t; ++i) {
    if (it.columns[i] >= p.k) throw InvalidArgument("interaction column out of range");
    if (i && it.columns[i] <= it.columns[i - 1]) throw InvalidArgument("interaction columns must increase");
    if (it.symbols[i] >= p.v) throw InvalidArgument("interaction symbol out of range");
  }
}

std::uint64_t upow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

}  // namespace

Array naive_cover(std::span<const Interaction> items, const OrbitTable& table, Rng& rng) {
  const auto& p = table.params();
  Array out(items.size(), p.k);
  for (std::size_t r = 0; r < items.size(); ++r) {
    check_item(items[r], table);
    auto row = out.row(r);
    for (auto& s : row) s = rng.symbol(p.v);
    for (std::size_t i = 0; i < p.t; ++i) row[items[r].columns[i]] = items[r].symbols[i];
  }
  return out;
}

GreedyCover::GreedyCover(const OrbitTable& table) : table_(table) {}

void GreedyCover::add(const Interaction& item) {
  check_item(item, table_);
  const GroupAction& group = table_.group();
  for (auto& row : rows_) {
    std::ptrdiff_t best = -1;
    unsigned best_overlap = 0;
    for (std::size_t g = 0; g < group.order(); ++g) {
      apply(group.perm(g), item.symbols, image_);
      if (!row.compatible(item.columns, image_)) continue;
      const unsigned ov = row.overlap(item.columns, image_);
      if (best < 0 || ov > best_overlap) {
        best = static_cast<std::ptrdiff_t>(g);
        best_overlap = ov;
      }
    }
    if (best >= 0) {
      apply(group.perm(static_cast<std::size_t>(best)), item.symbols, image_);
      row.fix(item.columns, image_);
      return;
    }
  }
  FlexRow fresh(table_.params().k);
  fresh.fix(item.columns, item.symbols);
  rows_.push_back(std::move(fresh));
}

Array GreedyCover::finish(Rng& rng) const { return fill_rows(rows_, table_.params().k, table_.v(), rng); }

Array greedy_cover(std::span<const Interaction> items, const OrbitTable& table, Rng& rng) {
  GreedyCover g(table);
  for (const auto& it : items) g.add(it);
  return g.finish(rng);
}

bool conflicts(const Interaction& a, const Interaction& b) {
  std::size_t i = 0, j = 0;
  while (i < a.columns.size() && j < b.columns.size()) {
    if (a.columns[i] < b.columns[j]) {
      ++i;
    } else if (a.columns[i] > b.columns[j]) {
      ++j;
    } else {
      if (a.symbols[i] != b.symbols[j]) return true;
      ++i;
      ++j;
    }
  }
  return false;
}

IncompatibilityGraph build_incompat_graph(std::span<const Interaction> items, const OrbitTable& table) {
  const auto& p = table.params();
  const GroupAction& group = table.group();
  IncompatibilityGraph g;
  g.vertices.reserve(items.size());
  g.adjacency.resize(items.size());
  std::vector<std::vector<std::uint32_t>> by_column(p.k);
  std::vector<std::uint32_t> stamp(items.size(), UINT32_MAX);
  std::vector<std::uint32_t> near;
  std::vector<Symbol> image;

  for (std::uint32_t idx = 0; idx < items.size(); ++idx) {
    const Interaction& item = items[idx];
    check_item(item, table);

    near.clear();
    for (auto c : item.columns)
      for (auto w : by_column[c])
        if (stamp[w] != idx) {
          stamp[w] = idx;
          near.push_back(w);
        }

    Interaction committed{item.columns, item.symbols};
    if (group.order() > 1) {
      std::size_t best_conflicts = SIZE_MAX;
      std::uint32_t best_rank = 0;
      Interaction cand{item.columns, {}};
      for (std::size_t e = 0; e < group.order(); ++e) {
        apply(group.perm(e), item.symbols, image);
        cand.symbols = image;
        std::size_t n = 0;
        for (auto w : near) n += conflicts(cand, g.vertices[w]);
        const std::uint32_t rank = tuple_rank(image, p.v);
        if (n < best_conflicts || (n == best_conflicts && rank < best_rank)) {
          best_conflicts = n;
          best_rank = rank;
          committed.symbols = image;
        }
      }
    }

    for (auto w : near)
      if (conflicts(committed, g.vertices[w])) {
        g.adjacency[idx].push_back(w);
        g.adjacency[w].push_back(idx);
        ++g.m_edges;
      }
    for (auto c : item.columns) by_column[c].push_back(idx);
    g.vertices.push_back(std::move(committed));
  }
  for (auto& adj : g.adjacency) std::sort(adj.begin(), adj.end());
  return g;
}

SmallestLast smallest_last_order(const IncompatibilityGraph& g) {
  const std::size_t n = g.size();
  SmallestLast out;
  if (n == 0) return out;
  std::vector<std::size_t> degree(n);
  std::size_t max_degree = 0;
  for (std::size_t i = 0; i < n; ++i) {
    degree[i] = g.adjacency[i].size();
    max_degree = std::max(max_degree, degree[i]);
  }
  std::vector<std::set<std::uint32_t>> bucket(max_degree + 1);
  for (std::uint32_t i = 0; i < n; ++i) bucket[degree[i]].insert(i);
  std::vector<std::uint8_t> removed(n, 0);
  std::vector<std::uint32_t> removal;
  removal.reserve(n);
  std::size_t low = 0;
  for (std::size_t step = 0; step < n; ++step) {
    while (bucket[low].empty()) ++low;
    const std::uint32_t u = *bucket[low].begin();
    bucket[low].erase(bucket[low].begin());
    out.degeneracy = std::max<unsigned>(out.degeneracy, static_cast<unsigned>(low));
    removed[u] = 1;
    removal.push_back(u);
    for (auto w : g.adjacency[u]) {
      if (removed[w]) continue;
      bucket[degree[w]].erase(w);
      --degree[w];
      bucket[degree[w]].insert(w);
    }
    if (low > 0) --low;
  }
  out.order.assign(removal.rbegin(), removal.rend());
  return out;
}

std::vector<std::uint32_t> greedy_coloring(const IncompatibilityGraph& g, std::span<const std::uint32_t> order) {
  constexpr std::uint32_t kNone = UINT32_MAX;
  std::vector<std::uint32_t> color(g.size(), kNone);
  std::vector<std::uint32_t> used;
  for (auto u : order) {
    used.clear();
    for (auto w : g.adjacency[u])
      if (color[w] != kNone) used.push_back(color[w]);
    std::sort(used.begin(), used.end());
    std::uint32_t c = 0;
    for (auto x : used) {
      if (x == c) ++c;
      else if (x > c) break;
    }
    color[u] = c;
  }
  return color;
}

ColorCoverResult color_cover(const IncompatibilityGraph& g, const OrbitTable& table, Rng& rng) {
  const auto& p = table.params();
  ColorCoverResult out;
  const SmallestLast sl = smallest_last_order(g);
  out.degeneracy = sl.degeneracy;
  out.color_of = greedy_coloring(g, sl.order);
  for (auto c : out.color_of) out.colors = std::max(out.colors, c + 1);

  PartialArray rows(out.colors, FlexRow(p.k));
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto& vtx = g.vertices[i];
    auto& row = rows[out.color_of[i]];
    if (!row.compatible(vtx.columns, vtx.symbols))
      throw InconsistentClass("color class " + std::to_string(out.color_of[i]) + " cannot hold " + to_string(vtx));
    row.fix(vtx.columns, vtx.symbols);
  }
  out.rows = fill_rows(rows, p.k, p.v, rng);
  return out;
}

DensityResult density_cover(std::span<const Interaction> items, const OrbitTable& table, Rng& rng) {
  const auto& p = table.params();
  const GroupAction& group = table.group();
  const std::size_t order = group.order();
  const unsigned t = p.t;
  const unsigned v = p.v;
  const std::uint64_t vt = upow(v, t);
  const std::uint64_t orbit_len = table.orbit_length();
  std::vector<std::uint64_t> vpow(t + 2);
  for (unsigned i = 0; i < vpow.size(); ++i) vpow[i] = upow(v, i);

  // every orbit member of every item, flattened
  std::vector<std::vector<Symbol>> members(items.size());
  std::vector<Symbol> image;
  for (std::size_t i = 0; i < items.size(); ++i) {
    check_item(items[i], table);
    members[i].reserve(order * t);
    for (std::size_t e = 0; e < order; ++e) {
      apply(group.perm(e), items[i].symbols, image);
      members[i].insert(members[i].end(), image.begin(), image.end());
    }
  }

  DensityResult out;
  out.rows = Array(0, p.k);
  std::vector<std::uint32_t> remaining(items.size());
  for (std::uint32_t i = 0; i < remaining.size(); ++i) remaining[i] = i;

  struct Slot {
    std::uint32_t item;
    unsigned pos;
  };
  std::vector<std::vector<Slot>> by_column(p.k);
  std::vector<std::uint8_t> alive;       // per remaining item x member
  std::vector<std::uint32_t> count;      // alive members per remaining item
  std::vector<unsigned> free_cols;       // unfixed columns per remaining item
  std::vector<std::int64_t> gain(v);

  while (!remaining.empty()) {
    const std::size_t u = remaining.size();
    for (auto& lst : by_column) lst.clear();
    for (std::uint32_t j = 0; j < u; ++j)
      for (unsigned q = 0; q < t; ++q) by_column[items[remaining[j]].columns[q]].push_back({j, q});
    alive.assign(u * order, 1);
    count.assign(u, static_cast<std::uint32_t>(order));
    free_cols.assign(u, t);
    std::vector<Cell> cells(p.k, kFlexible);

    for (;;) {
      std::int64_t best_gain = 0;
      std::ptrdiff_t best_col = -1;
      Symbol best_sym = 0;
      for (std::size_t c = 0; c < p.k; ++c) {
        if (cells[c] != kFlexible) continue;
        bool touched = false;
        std::fill(gain.begin(), gain.end(), 0);
        for (const Slot& s : by_column[c]) {
          if (count[s.item] == 0) continue;
          touched = true;
          const unsigned f = free_cols[s.item];
          const auto base = static_cast<std::int64_t>(count[s.item] * vpow[t - f]);
          const auto mult = static_cast<std::int64_t>(vpow[t - f + 1]);
          const Symbol* m = members[remaining[s.item]].data();
          const std::uint8_t* a = alive.data() + s.item * order;
          for (std::size_t e = 0; e < order; ++e)
            if (a[e]) gain[m[e * t + s.pos]] += mult;
          for (auto& x : gain) x -= base;
        }
        if (!touched) continue;
        for (unsigned sym = 0; sym < v; ++sym)
          if (best_col < 0 || gain[sym] > best_gain) {
            best_gain = gain[sym];
            best_col = static_cast<std::ptrdiff_t>(c);
            best_sym = static_cast<Symbol>(sym);
          }
      }
      if (best_col < 0) break;
      cells[best_col] = best_sym;
      for (const Slot& s : by_column[best_col]) {
        if (count[s.item] == 0) continue;
        const Symbol* m = members[remaining[s.item]].data();
        std::uint8_t* a = alive.data() + s.item * order;
        for (std::size_t e = 0; e < order; ++e)
          if (a[e] && m[e * t + s.pos] != best_sym) {
            a[e] = 0;
            --count[s.item];
          }
        --free_cols[s.item];
      }
    }

    std::vector<Symbol> row(p.k);
    for (std::size_t c = 0; c < p.k; ++c) row[c] = cells[c] == kFlexible ? rng.symbol(v) : static_cast<Symbol>(cells[c]);

    std::vector<std::uint32_t> next;
    std::uint64_t covered = 0;
    for (std::uint32_t j = 0; j < u; ++j) {
      if (count[j] > 0 && free_cols[j] == 0) ++covered;
      else next.push_back(remaining[j]);
    }
    const std::uint64_t required = (u * orbit_len + vt - 1) / vt;
    if (covered < required)
      throw GuaranteeViolated("density row covered " + std::to_string(covered) + " of " + std::to_string(u) +
                              " items, expected at least " + std::to_string(required));
    out.rows.append_row(row);
    out.removed.push_back(covered);
    out.required.push_back(required);
    remaining = std::move(next);
  }
  return out;
}

}  // namespace caforge
