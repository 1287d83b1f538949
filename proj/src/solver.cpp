#include "hypertile/solver.h"

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <queue>
#include <tuple>
#include <unordered_map>

#include "hypertile/errors.h"

namespace hypertile {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

// A DP state packs six bits per bag slot (component id in the low five, degree
// parity in the sixth) plus a completion flag in the top bit.
using Key = unsigned __int128;

constexpr int kMaxBag = 21;
constexpr int kSlotBits = 6;
constexpr Key kDone = Key(1) << 127;
constexpr std::uint8_t kParity = 1u << 5;
constexpr std::uint8_t kComp = kParity - 1;

struct KeyHash {
    std::size_t operator()(Key k) const {
        const auto lo = static_cast<std::uint64_t>(k), hi = static_cast<std::uint64_t>(k >> 64);
        std::uint64_t h = lo * 0x9E3779B97F4A7C15ull ^ (hi + 0x7F4A7C159E3779B9ull + (lo << 6) + (lo >> 2));
        h ^= h >> 31;
        return static_cast<std::size_t>(h * 0xBF58476D1CE4E5B9ull);
    }
};

struct State {
    std::array<std::uint8_t, kMaxBag> slot{};
    int m = 0;
    bool done = false;

    int comp(int i) const { return slot[static_cast<std::size_t>(i)] & kComp; }
    bool odd(int i) const { return (slot[static_cast<std::size_t>(i)] & kParity) != 0; }
};

Key encode(const State& s) {
    Key k = s.done ? kDone : Key(0);
    for (int i = 0; i < s.m; ++i) k |= Key(s.slot[static_cast<std::size_t>(i)]) << (kSlotBits * i);
    return k;
}

State decode(Key k, int m) {
    State s;
    s.m = m;
    s.done = (k & kDone) != 0;
    for (int i = 0; i < m; ++i) s.slot[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>((k >> (kSlotBits * i)) & 63u);
    return s;
}

/// Renumbers components 1.. by first appearance.
void canonicalize(State& s) {
    std::array<std::uint8_t, kMaxBag + 1> map{};
    std::uint8_t next = 0;
    for (int i = 0; i < s.m; ++i) {
        const int c = s.comp(i);
        if (c == 0) continue;
        if (map[static_cast<std::size_t>(c)] == 0) map[static_cast<std::size_t>(c)] = ++next;
        auto& v = s.slot[static_cast<std::size_t>(i)];
        v = static_cast<std::uint8_t>((v & kParity) | map[static_cast<std::size_t>(c)]);
    }
}

void relabel(State& s, int from, int to) {
    for (int i = 0; i < s.m; ++i) {
        auto& v = s.slot[static_cast<std::size_t>(i)];
        if ((v & kComp) == from) v = static_cast<std::uint8_t>((v & kParity) | to);
    }
}

int max_comp(const State& s) {
    int c = 0;
    for (int i = 0; i < s.m; ++i) c = std::max(c, s.comp(i));
    return c;
}

std::uint32_t support(const State& s) {
    std::uint32_t mask = 0;
    for (int i = 0; i < s.m; ++i)
        if (s.comp(i) != 0) mask |= 1u << i;
    return mask;
}

int position(const std::vector<int>& bag, int v) {
    return static_cast<int>(std::lower_bound(bag.begin(), bag.end(), v) - bag.begin());
}

struct Entry {
    int cost = 0;
    Key left = 0;
    Key right = 0;
    std::int8_t mult = 0;  // edge multiplicity chosen at an IntroduceEdge node
};

using Table = std::unordered_map<Key, Entry, KeyHash>;

struct Chosen {
    int a, b, mult;
};

enum class Problem { Steiner, Tour };

/// Shared driver: runs the bottom-up DP and returns the chosen edges of an optimum.
std::vector<Chosen> run_treewidth_dp(const PatchGraph& g, const std::vector<int>& terminals, const TreeDecomposition& ntd,
                                     int width_cap, Problem problem, int& cost) {
    ensure(ntd.nice, "treewidth DP needs a nice decomposition");
    const int width = ntd.width();
    if (width > width_cap || width + 1 > kMaxBag)
        fail(ErrorKind::WidthTooLarge, "decomposition width " + std::to_string(width) + " exceeds the cap of " +
                                           std::to_string(std::min(width_cap, kMaxBag - 1)));
    std::vector<char> is_terminal(g.vertex_count(), 0);
    for (int v : terminals) is_terminal[static_cast<std::size_t>(v)] = 1;
    const bool tour = problem == Problem::Tour;

    std::vector<int> order;
    {
        std::vector<std::pair<int, std::size_t>> stack{{ntd.root, 0}};
        while (!stack.empty()) {
            auto& [x, i] = stack.back();
            const auto& ch = ntd.nodes[static_cast<std::size_t>(x)].children;
            if (i < ch.size()) {
                const int c = ch[i++];
                stack.emplace_back(c, 0);
            } else {
                order.push_back(x);
                stack.pop_back();
            }
        }
    }

    std::vector<Table> table(ntd.nodes.size());
    for (int x : order) {
        const TdNode& node = ntd.nodes[static_cast<std::size_t>(x)];
        Table& out = table[static_cast<std::size_t>(x)];
        const int m = static_cast<int>(node.bag.size());
        auto relax = [&](State s, int c, Key left, Key right, int mult) {
            canonicalize(s);
            const Key k = encode(s);
            const auto it = out.find(k);
            if (it == out.end() || c < it->second.cost) out[k] = {c, left, right, static_cast<std::int8_t>(mult)};
        };

        switch (node.kind) {
            case NodeKind::Leaf: out[0] = {0, 0, 0, 0}; break;
            case NodeKind::Introduce: {
                const int i = position(node.bag, node.vertex);
                const bool term = is_terminal[static_cast<std::size_t>(node.vertex)] != 0;
                for (const auto& [ck, ce] : table[static_cast<std::size_t>(node.children[0])]) {
                    const State cs = decode(ck, m - 1);
                    State s;
                    s.m = m;
                    s.done = cs.done;
                    for (int j = 0, k = 0; j < m; ++j)
                        if (j != i) s.slot[static_cast<std::size_t>(j)] = cs.slot[static_cast<std::size_t>(k++)];
                    if (!term) relax(s, ce.cost, ck, 0, 0);
                    if (!s.done) {
                        s.slot[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(max_comp(s) + 1);
                        relax(s, ce.cost, ck, 0, 0);
                    }
                }
                break;
            }
            case NodeKind::Forget: {
                const std::vector<int>& cbag = ntd.nodes[static_cast<std::size_t>(node.children[0])].bag;
                const int i = position(cbag, node.vertex);
                for (const auto& [ck, ce] : table[static_cast<std::size_t>(node.children[0])]) {
                    const State cs = decode(ck, m + 1);
                    const int c = cs.comp(i);
                    if (tour && c != 0 && cs.odd(i)) continue;
                    State s;
                    s.m = m;
                    s.done = cs.done;
                    bool shared = false, others = false;
                    for (int j = 0, k = 0; j <= m; ++j) {
                        if (j == i) continue;
                        s.slot[static_cast<std::size_t>(k++)] = cs.slot[static_cast<std::size_t>(j)];
                        shared = shared || (c != 0 && cs.comp(j) == c);
                        others = others || cs.comp(j) != 0;
                    }
                    if (c != 0 && !shared) {
                        // The component leaves the bag for good: it must be the whole solution.
                        if (others || s.done) continue;
                        s.done = true;
                    }
                    relax(s, ce.cost, ck, 0, 0);
                }
                break;
            }
            case NodeKind::IntroduceEdge: {
                const int ia = position(node.bag, node.edge.first), ib = position(node.bag, node.edge.second);
                for (const auto& [ck, ce] : table[static_cast<std::size_t>(node.children[0])]) {
                    const State cs = decode(ck, m);
                    relax(cs, ce.cost, ck, 0, 0);
                    const int ca = cs.comp(ia), cb = cs.comp(ib);
                    if (ca == 0 || cb == 0) continue;
                    if (!tour) {
                        if (ca == cb) continue;
                        State s = cs;
                        relabel(s, cb, ca);
                        relax(s, ce.cost + 1, ck, 0, 1);
                        continue;
                    }
                    for (int mult = 1; mult <= 2; ++mult) {
                        State s = cs;
                        if (mult == 1) {
                            s.slot[static_cast<std::size_t>(ia)] ^= kParity;
                            s.slot[static_cast<std::size_t>(ib)] ^= kParity;
                        }
                        relabel(s, cb, ca);
                        relax(s, ce.cost + mult, ck, 0, mult);
                    }
                }
                break;
            }
            case NodeKind::Join: {
                const Table& left = table[static_cast<std::size_t>(node.children[0])];
                const Table& right = table[static_cast<std::size_t>(node.children[1])];
                std::unordered_map<std::uint32_t, std::vector<std::pair<Key, int>>> by_support;
                for (const auto& [rk, re] : right) by_support[support(decode(rk, m))].emplace_back(rk, re.cost);
                for (const auto& [lk, le] : left) {
                    const State ls = decode(lk, m);
                    const auto it = by_support.find(support(ls));
                    if (it == by_support.end()) continue;
                    for (const auto& [rk, rcost] : it->second) {
                        const State rs = decode(rk, m);
                        if (ls.done && rs.done) continue;
                        // Union-find over slots; for trees a failed union is a cycle.
                        std::array<int, kMaxBag> uf;
                        std::iota(uf.begin(), uf.end(), 0);
                        auto find = [&](int a) {
                            while (uf[static_cast<std::size_t>(a)] != a) a = uf[static_cast<std::size_t>(a)] = uf[static_cast<std::size_t>(uf[static_cast<std::size_t>(a)])];
                            return a;
                        };
                        bool cycle = false;
                        for (const State* side : {&ls, &rs}) {
                            std::array<int, kMaxBag + 1> first;
                            first.fill(-1);
                            for (int j = 0; j < m && !cycle; ++j) {
                                const int c = side->comp(j);
                                if (c == 0) continue;
                                int& f = first[static_cast<std::size_t>(c)];
                                if (f < 0) {
                                    f = j;
                                    continue;
                                }
                                const int a = find(f), b = find(j);
                                if (a == b) cycle = true;
                                else uf[static_cast<std::size_t>(a)] = b;
                            }
                        }
                        if (cycle && !tour) continue;
                        State s;
                        s.m = m;
                        s.done = ls.done || rs.done;
                        for (int j = 0; j < m; ++j) {
                            if (ls.comp(j) == 0) continue;
                            const bool odd = ls.odd(j) != rs.odd(j);
                            s.slot[static_cast<std::size_t>(j)] =
                                static_cast<std::uint8_t>((odd ? kParity : 0) | (find(j) + 1));
                        }
                        relax(s, le.cost + rcost, lk, rk, 0);
                    }
                }
                break;
            }
            case NodeKind::Bag: fail(ErrorKind::InvariantViolation, "plain bag node in a nice decomposition");
        }
    }

    const Table& root = table[static_cast<std::size_t>(ntd.root)];
    Key best = 0;
    bool found = false;
    if (terminals.empty()) {
        found = root.count(0) > 0;
    } else if (root.count(kDone)) {
        best = kDone;
        found = true;
    }
    if (!found) fail(ErrorKind::Disconnected, "terminals are not connected in the closure");
    cost = root.at(best).cost;

    std::vector<Chosen> chosen;
    std::vector<std::pair<int, Key>> stack{{ntd.root, best}};
    while (!stack.empty()) {
        const auto [x, k] = stack.back();
        stack.pop_back();
        const TdNode& node = ntd.nodes[static_cast<std::size_t>(x)];
        if (node.kind == NodeKind::Leaf) continue;
        const Entry& e = table[static_cast<std::size_t>(x)].at(k);
        if (node.kind == NodeKind::IntroduceEdge && e.mult > 0) chosen.push_back({node.edge.first, node.edge.second, e.mult});
        stack.emplace_back(node.children[0], e.left);
        if (node.kind == NodeKind::Join) stack.emplace_back(node.children[1], e.right);
    }
    return chosen;
}

std::vector<int> euler_tour(std::size_t n, const std::vector<Chosen>& chosen, int start) {
    std::vector<std::vector<std::pair<int, int>>> adj(n);  // (neighbor, edge id)
    int id = 0;
    for (const Chosen& c : chosen) {
        for (int k = 0; k < c.mult; ++k, ++id) {
            adj[static_cast<std::size_t>(c.a)].emplace_back(c.b, id);
            adj[static_cast<std::size_t>(c.b)].emplace_back(c.a, id);
        }
    }
    std::vector<char> used(static_cast<std::size_t>(id), 0);
    std::vector<std::size_t> next(n, 0);
    std::vector<int> stack{start}, walk;
    while (!stack.empty()) {
        const int v = stack.back();
        auto& it = next[static_cast<std::size_t>(v)];
        const auto& av = adj[static_cast<std::size_t>(v)];
        while (it < av.size() && used[static_cast<std::size_t>(av[it].second)]) ++it;
        if (it == av.size()) {
            walk.push_back(v);
            stack.pop_back();
        } else {
            used[static_cast<std::size_t>(av[it].second)] = 1;
            stack.push_back(av[it].first);
        }
    }
    std::reverse(walk.begin(), walk.end());
    return walk;
}

}  // namespace

SteinerSolution steiner_dp(const PatchGraph& g, const std::vector<int>& terminals, const TreeDecomposition& ntd,
                           int width_cap) {
    SteinerSolution sol;
    for (const Chosen& c : run_treewidth_dp(g, terminals, ntd, width_cap, Problem::Steiner, sol.cost))
        sol.edges.emplace_back(std::min(c.a, c.b), std::max(c.a, c.b));
    std::sort(sol.edges.begin(), sol.edges.end());
    check_steiner(g, terminals, sol);
    return sol;
}

TourSolution tsp_dp(const PatchGraph& g, const std::vector<int>& terminals, const TreeDecomposition& ntd, int width_cap) {
    TourSolution sol;
    if (terminals.empty()) return sol;
    std::vector<Chosen> chosen = run_treewidth_dp(g, terminals, ntd, width_cap, Problem::Tour, sol.cost);
    std::sort(chosen.begin(), chosen.end(), [](const Chosen& x, const Chosen& y) {
        return std::tie(x.a, x.b) < std::tie(y.a, y.b);
    });
    sol.walk = euler_tour(g.vertex_count(), chosen, terminals.front());
    check_tour(g, terminals, sol);
    return sol;
}

SteinerSolution dreyfus_wagner(const PatchGraph& g, const std::vector<int>& terminals) {
    const int k = static_cast<int>(terminals.size());
    if (k > kDreyfusWagnerMax)
        fail(ErrorKind::TooManyTerminals, std::to_string(k) + " terminals exceed the Dreyfus-Wagner limit of " +
                                              std::to_string(kDreyfusWagnerMax));
    SteinerSolution sol;
    if (k <= 1) return sol;
    const std::size_t n = g.vertex_count();
    const int m = k - 1;
    const std::size_t subsets = std::size_t{1} << m;
    if (subsets * n > 60'000'000)
        fail(ErrorKind::CapExceeded, "Dreyfus-Wagner table too large for this patch");

    constexpr int kInf = std::numeric_limits<int>::max() / 4;
    // back >= 0: reached over the edge from that vertex; back < -1: split with subset -back-2.
    std::vector<int> dp(subsets * n, kInf), back(subsets * n, -1);
    auto at = [&](std::size_t s, std::size_t v) { return s * n + v; };

    for (std::size_t s = 1; s < subsets; ++s) {
        if ((s & (s - 1)) == 0) {
            const int i = std::countr_zero(s);
            dp[at(s, static_cast<std::size_t>(terminals[static_cast<std::size_t>(i)]))] = 0;
        } else {
            const std::size_t low = s & (~s + 1);
            for (std::size_t a = (s - 1) & s; a > 0; a = (a - 1) & s) {
                if (!(a & low)) continue;
                const std::size_t b = s ^ a;
                for (std::size_t v = 0; v < n; ++v) {
                    const int c = dp[at(a, v)] + dp[at(b, v)];
                    if (c < dp[at(s, v)]) {
                        dp[at(s, v)] = c;
                        back[at(s, v)] = -static_cast<int>(a) - 2;
                    }
                }
            }
        }
        using Item = std::pair<int, int>;
        std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
        for (std::size_t v = 0; v < n; ++v)
            if (dp[at(s, v)] < kInf) queue.emplace(dp[at(s, v)], static_cast<int>(v));
        while (!queue.empty()) {
            const auto [c, v] = queue.top();
            queue.pop();
            if (c > dp[at(s, static_cast<std::size_t>(v))]) continue;
            for (int u : g.adj[static_cast<std::size_t>(v)]) {
                if (c + 1 < dp[at(s, static_cast<std::size_t>(u))]) {
                    dp[at(s, static_cast<std::size_t>(u))] = c + 1;
                    back[at(s, static_cast<std::size_t>(u))] = v;
                    queue.emplace(c + 1, u);
                }
            }
        }
    }

    const std::size_t full = subsets - 1;
    const auto root = static_cast<std::size_t>(terminals.back());
    if (dp[at(full, root)] >= kInf) fail(ErrorKind::Disconnected, "terminals are not connected in the patch");
    sol.cost = dp[at(full, root)];
    std::vector<std::pair<std::size_t, std::size_t>> stack{{full, root}};
    while (!stack.empty()) {
        const auto [s, v] = stack.back();
        stack.pop_back();
        const int b = back[at(s, v)];
        if (b >= 0) {
            sol.edges.emplace_back(std::min(b, static_cast<int>(v)), std::max(b, static_cast<int>(v)));
            stack.emplace_back(s, static_cast<std::size_t>(b));
        } else if (b < -1) {
            const auto a = static_cast<std::size_t>(-b - 2);
            stack.emplace_back(a, v);
            stack.emplace_back(s ^ a, v);
        }
    }
    std::sort(sol.edges.begin(), sol.edges.end());
    sol.edges.erase(std::unique(sol.edges.begin(), sol.edges.end()), sol.edges.end());
    check_steiner(g, terminals, sol);
    return sol;
}

HeldKarpResult held_karp(const std::vector<std::vector<int>>& dist) {
    const int k = static_cast<int>(dist.size());
    if (k > kHeldKarpMax)
        fail(ErrorKind::TooManyTerminals,
             std::to_string(k) + " terminals exceed the Held-Karp limit of " + std::to_string(kHeldKarpMax));
    for (const auto& row : dist)
        if (static_cast<int>(row.size()) != k) fail(ErrorKind::InvariantViolation, "distance matrix is not square");
    HeldKarpResult res;
    if (k == 0) return res;
    res.order.push_back(0);
    if (k == 1) return res;

    const int m = k - 1;  // cities 1..k-1 form the subset bits
    const std::size_t subsets = std::size_t{1} << m;
    constexpr long kInf = std::numeric_limits<long>::max() / 4;
    std::vector<long> dp(subsets * static_cast<std::size_t>(m), kInf);
    std::vector<std::int8_t> prev(subsets * static_cast<std::size_t>(m), -1);
    auto at = [&](std::size_t s, int j) { return s * static_cast<std::size_t>(m) + static_cast<std::size_t>(j); };
    for (int j = 0; j < m; ++j) dp[at(std::size_t{1} << j, j)] = dist[0][static_cast<std::size_t>(j + 1)];
    for (std::size_t s = 1; s < subsets; ++s) {
        for (int j = 0; j < m; ++j) {
            if (!(s & (std::size_t{1} << j)) || dp[at(s, j)] >= kInf) continue;
            for (int l = 0; l < m; ++l) {
                if (s & (std::size_t{1} << l)) continue;
                const std::size_t t = s | (std::size_t{1} << l);
                const long c = dp[at(s, j)] + dist[static_cast<std::size_t>(j + 1)][static_cast<std::size_t>(l + 1)];
                if (c < dp[at(t, l)]) {
                    dp[at(t, l)] = c;
                    prev[at(t, l)] = static_cast<std::int8_t>(j);
                }
            }
        }
    }
    const std::size_t full = subsets - 1;
    int last = 0;
    res.cost = kInf;
    for (int j = 0; j < m; ++j) {
        const long c = dp[at(full, j)] + dist[static_cast<std::size_t>(j + 1)][0];
        if (c < res.cost) {
            res.cost = c;
            last = j;
        }
    }
    std::vector<int> tail;
    for (std::size_t s = full; last >= 0;) {
        tail.push_back(last + 1);
        const int p = prev[at(s, last)];
        s ^= std::size_t{1} << last;
        last = p;
    }
    res.order.insert(res.order.end(), tail.rbegin(), tail.rend());
    return res;
}

void check_steiner(const PatchGraph& g, const std::vector<int>& terminals, const SteinerSolution& s) {
    std::map<int, int> idx;
    for (int v : terminals) idx.emplace(v, 0);
    for (const auto& [a, b] : s.edges) {
        if (a >= b || !g.has_edge(a, b)) fail(ErrorKind::InvariantViolation, "Steiner edge not in the graph");
        idx.emplace(a, 0);
        idx.emplace(b, 0);
    }
    if (static_cast<int>(s.edges.size()) != s.cost) fail(ErrorKind::InvariantViolation, "Steiner cost differs from its edge count");
    if (std::adjacent_find(s.edges.begin(), s.edges.end()) != s.edges.end())
        fail(ErrorKind::InvariantViolation, "Steiner edge repeated");
    if (idx.empty()) return;
    int id = 0;
    for (auto& [v, i] : idx) i = id++;
    std::vector<int> uf(idx.size());
    std::iota(uf.begin(), uf.end(), 0);
    auto find = [&](int a) {
        while (uf[static_cast<std::size_t>(a)] != a) a = uf[static_cast<std::size_t>(a)];
        return a;
    };
    for (const auto& [a, b] : s.edges) {
        const int x = find(idx[a]), y = find(idx[b]);
        if (x == y) fail(ErrorKind::InvariantViolation, "Steiner solution has a cycle");
        uf[static_cast<std::size_t>(x)] = y;
    }
    if (s.edges.size() + 1 != idx.size()) fail(ErrorKind::InvariantViolation, "Steiner solution is not connected");
}

void check_tour(const PatchGraph& g, const std::vector<int>& terminals, const TourSolution& w) {
    if (terminals.empty()) {
        if (!w.walk.empty() || w.cost != 0) fail(ErrorKind::InvariantViolation, "tour without terminals must be empty");
        return;
    }
    if (w.walk.empty() || w.walk.front() != w.walk.back()) fail(ErrorKind::InvariantViolation, "tour is not closed");
    if (static_cast<int>(w.walk.size()) - 1 != w.cost) fail(ErrorKind::InvariantViolation, "tour cost differs from its length");
    std::map<std::pair<int, int>, int> use;
    for (std::size_t i = 0; i + 1 < w.walk.size(); ++i) {
        const int a = w.walk[i], b = w.walk[i + 1];
        if (!g.has_edge(a, b)) fail(ErrorKind::InvariantViolation, "tour steps along a non-edge");
        if (++use[{std::min(a, b), std::max(a, b)}] > 2) fail(ErrorKind::InvariantViolation, "tour uses an edge three times");
    }
    for (int t : terminals)
        if (std::find(w.walk.begin(), w.walk.end(), t) == w.walk.end())
            fail(ErrorKind::InvariantViolation, "tour misses a terminal");
}

SolveResult solve(const Tiling& t, const std::vector<Walk>& walks, SolveOptions opts) {
    SolveResult res;
    auto t0 = Clock::now();
    const TerminalSet ts = resolve_terminals(t, walks);
    res.stats.ms_resolve = ms_since(t0);
    res.stats.n = static_cast<std::size_t>(ts.n());
    res.stats.N = ts.total_steps;

    t0 = Clock::now();
    res.closure = build_closure(t, ts);
    res.closure.stats.ms_resolve = res.stats.ms_resolve;
    res.stats.ms_closure = ms_since(t0);
    const PatchGraph& g = res.closure.graph;
    res.stats.vertices = g.vertex_count();
    res.stats.edges = g.edge_count();

    t0 = Clock::now();
    const TreeDecomposition nice = make_nice(g, tree_decomposition(g));
    res.stats.ms_decomposition = ms_since(t0);
    res.stats.width = nice.width();
    res.stats.nice_nodes = nice.size();

    const std::vector<int>& terms = res.closure.terminal_ids;
    const int cap = t.config().width_cap;
    if (opts.steiner) {
        t0 = Clock::now();
        res.steiner = steiner_dp(g, terms, nice, cap);
        res.stats.ms_steiner = ms_since(t0);
    }
    if (opts.tsp) {
        t0 = Clock::now();
        res.tsp = tsp_dp(g, terms, nice, cap);
        res.stats.ms_tsp = ms_since(t0);
    }
    if (opts.steiner && opts.tsp && (res.tsp.cost < res.steiner.cost || res.tsp.cost > 2 * res.steiner.cost))
        fail(ErrorKind::InvariantViolation, "tour cost outside [steiner, 2 steiner]");
    return res;
}

}  // namespace hypertile
