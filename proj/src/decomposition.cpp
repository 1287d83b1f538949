#include "hypertile/decomposition.h"

#include <algorithm>
#include <set>
#include <tuple>
#include <unordered_set>

#include "hypertile/errors.h"

namespace hypertile {

namespace {

std::uint64_t edge_id(int a, int b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) | static_cast<std::uint32_t>(b);
}

bool contains(const std::vector<int>& sorted, int v) { return std::binary_search(sorted.begin(), sorted.end(), v); }

void insert_sorted(std::vector<int>& sorted, int v) {
    const auto it = std::lower_bound(sorted.begin(), sorted.end(), v);
    if (it == sorted.end() || *it != v) sorted.insert(it, v);
}

void erase_sorted(std::vector<int>& sorted, int v) {
    const auto it = std::lower_bound(sorted.begin(), sorted.end(), v);
    if (it != sorted.end() && *it == v) sorted.erase(it);
}

/// Children before parents.
std::vector<int> post_order(const TreeDecomposition& td) {
    std::vector<int> out;
    if (td.root < 0) return out;
    std::vector<std::pair<int, std::size_t>> stack{{td.root, 0}};
    while (!stack.empty()) {
        auto& [x, i] = stack.back();
        const auto& ch = td.nodes[static_cast<std::size_t>(x)].children;
        if (i < ch.size()) {
            const int c = ch[i++];
            stack.emplace_back(c, 0);
        } else {
            out.push_back(x);
            stack.pop_back();
        }
    }
    return out;
}

}  // namespace

const char* node_kind_name(NodeKind k) {
    switch (k) {
        case NodeKind::Bag: return "bag";
        case NodeKind::Leaf: return "leaf";
        case NodeKind::Introduce: return "introduce";
        case NodeKind::Forget: return "forget";
        case NodeKind::Join: return "join";
        case NodeKind::IntroduceEdge: return "introduce_edge";
    }
    return "?";
}

const char* violation_name(ViolationKind k) {
    switch (k) {
        case ViolationKind::MalformedTree: return "malformed_tree";
        case ViolationKind::UncoveredVertex: return "uncovered_vertex";
        case ViolationKind::MissingEdge: return "missing_edge";
        case ViolationKind::BrokenConnectivity: return "broken_connectivity";
        case ViolationKind::NotNice: return "not_nice";
    }
    return "?";
}

int TreeDecomposition::width() const {
    std::size_t w = 0;
    for (const TdNode& x : nodes) w = std::max(w, x.bag.size());
    return static_cast<int>(w) - 1;
}

TreeDecomposition tree_decomposition(const PatchGraph& g) {
    const std::size_t n = g.vertex_count();
    TreeDecomposition td;
    if (n == 0) {
        td.nodes.push_back({});
        td.root = 0;
        return td;
    }
    std::vector<std::vector<int>> adj(n);
    for (std::size_t v = 0; v < n; ++v) {
        adj[v] = g.adj[v];
        std::sort(adj[v].begin(), adj[v].end());
    }
    auto fill_of = [&](int v) {
        const auto& nb = adj[static_cast<std::size_t>(v)];
        long missing = 0;
        for (std::size_t i = 0; i < nb.size(); ++i)
            for (std::size_t j = i + 1; j < nb.size(); ++j)
                if (!contains(adj[static_cast<std::size_t>(nb[i])], nb[j])) ++missing;
        return missing;
    };
    using Entry = std::tuple<long, std::size_t, VertexKey, int>;
    auto entry_of = [&](int v) {
        return Entry{fill_of(v), adj[static_cast<std::size_t>(v)].size(), g.vertices[static_cast<std::size_t>(v)].key, v};
    };
    std::set<Entry> queue;
    std::vector<Entry> current(n);
    for (std::size_t v = 0; v < n; ++v) {
        current[v] = entry_of(static_cast<int>(v));
        queue.insert(current[v]);
    }

    std::vector<int> position(n, -1);
    std::vector<std::vector<int>> higher(n);
    std::vector<int> order;
    while (!queue.empty()) {
        const int v = std::get<3>(*queue.begin());
        queue.erase(queue.begin());
        position[static_cast<std::size_t>(v)] = static_cast<int>(order.size());
        order.push_back(v);
        const std::vector<int> nb = adj[static_cast<std::size_t>(v)];
        higher[static_cast<std::size_t>(v)] = nb;
        for (int u : nb) erase_sorted(adj[static_cast<std::size_t>(u)], v);
        for (std::size_t i = 0; i < nb.size(); ++i) {
            for (std::size_t j = i + 1; j < nb.size(); ++j) {
                insert_sorted(adj[static_cast<std::size_t>(nb[i])], nb[j]);
                insert_sorted(adj[static_cast<std::size_t>(nb[j])], nb[i]);
            }
        }
        adj[static_cast<std::size_t>(v)].clear();
        std::vector<int> affected = nb;
        for (int u : nb)
            for (int w : adj[static_cast<std::size_t>(u)]) affected.push_back(w);
        std::sort(affected.begin(), affected.end());
        affected.erase(std::unique(affected.begin(), affected.end()), affected.end());
        for (int u : affected) {
            const auto su = static_cast<std::size_t>(u);
            if (position[su] >= 0) continue;
            queue.erase(current[su]);
            current[su] = entry_of(u);
            queue.insert(current[su]);
        }
    }

    // One node per vertex, indexed by elimination position.
    std::vector<std::vector<int>> bags(n);
    std::vector<int> parent(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        const int v = order[i];
        auto& bag = bags[i];
        bag = higher[static_cast<std::size_t>(v)];
        bag.push_back(v);
        std::sort(bag.begin(), bag.end());
        int best = -1;
        for (int u : higher[static_cast<std::size_t>(v)]) {
            const int pu = position[static_cast<std::size_t>(u)];
            if (best < 0 || pu < best) best = pu;
        }
        parent[i] = best;
    }
    // Separate components hang under the last root.
    const int last = static_cast<int>(n) - 1;
    for (std::size_t i = 0; i + 1 < n; ++i)
        if (parent[i] < 0) parent[i] = last;

    std::vector<int> alias(n, -1);
    auto resolve = [&](int x) {
        while (x >= 0 && alias[static_cast<std::size_t>(x)] >= 0) x = alias[static_cast<std::size_t>(x)];
        return x;
    };
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const int y = resolve(parent[i]);
        if (std::includes(bags[static_cast<std::size_t>(y)].begin(), bags[static_cast<std::size_t>(y)].end(),
                          bags[i].begin(), bags[i].end()))
            alias[i] = y;
    }
    std::vector<int> renum(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        if (alias[i] >= 0) continue;
        renum[i] = static_cast<int>(td.nodes.size());
        TdNode node;
        node.bag = std::move(bags[i]);
        td.nodes.push_back(std::move(node));
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (alias[i] >= 0) continue;
        const int x = renum[i];
        if (parent[i] < 0) {
            td.root = x;
            continue;
        }
        const int y = renum[static_cast<std::size_t>(resolve(parent[i]))];
        td.nodes[static_cast<std::size_t>(x)].parent = y;
        td.nodes[static_cast<std::size_t>(y)].children.push_back(x);
    }
    const auto problems = validate(g, td);
    if (!problems.empty()) fail(ErrorKind::InvariantViolation, "min-fill decomposition invalid: " + problems.front().message);
    return td;
}

std::vector<Violation> validate(const PatchGraph& g, const TreeDecomposition& td) {
    std::vector<Violation> out;
    const std::size_t n = g.vertex_count(), m = td.nodes.size();
    auto report = [&](ViolationKind k, int node, int vertex, int other, std::string msg) {
        out.push_back({k, node, vertex, other, std::move(msg)});
    };

    if (m == 0 || td.root < 0 || static_cast<std::size_t>(td.root) >= m) {
        report(ViolationKind::MalformedTree, -1, -1, -1, "missing root");
        return out;
    }
    for (std::size_t x = 0; x < m; ++x) {
        const TdNode& node = td.nodes[x];
        const int xi = static_cast<int>(x);
        if (static_cast<int>(x) == td.root ? node.parent != -1 : node.parent < 0 || static_cast<std::size_t>(node.parent) >= m) {
            report(ViolationKind::MalformedTree, xi, -1, -1, "bad parent link at node " + std::to_string(x));
            return out;
        }
        for (int c : node.children) {
            if (c < 0 || static_cast<std::size_t>(c) >= m || td.nodes[static_cast<std::size_t>(c)].parent != xi) {
                report(ViolationKind::MalformedTree, xi, -1, -1, "child link disagrees with parent at node " + std::to_string(x));
                return out;
            }
        }
        if (!std::is_sorted(node.bag.begin(), node.bag.end()) ||
            std::adjacent_find(node.bag.begin(), node.bag.end()) != node.bag.end()) {
            report(ViolationKind::MalformedTree, xi, -1, -1, "bag not sorted and unique at node " + std::to_string(x));
            return out;
        }
        for (int v : node.bag) {
            if (v < 0 || static_cast<std::size_t>(v) >= n) {
                report(ViolationKind::MalformedTree, xi, v, -1, "bag names unknown vertex at node " + std::to_string(x));
                return out;
            }
        }
    }
    std::size_t reached = 0;
    {
        std::vector<int> stack{td.root};
        std::vector<char> seen(m, 0);
        seen[static_cast<std::size_t>(td.root)] = 1;
        while (!stack.empty()) {
            const int x = stack.back();
            stack.pop_back();
            ++reached;
            for (int c : td.nodes[static_cast<std::size_t>(x)].children) {
                if (seen[static_cast<std::size_t>(c)]) continue;
                seen[static_cast<std::size_t>(c)] = 1;
                stack.push_back(c);
            }
        }
    }
    if (reached != m) {
        report(ViolationKind::MalformedTree, -1, -1, -1, "nodes not all reachable from the root");
        return out;
    }

    std::vector<std::vector<int>> holders(n);
    for (std::size_t x = 0; x < m; ++x)
        for (int v : td.nodes[x].bag) holders[static_cast<std::size_t>(v)].push_back(static_cast<int>(x));

    for (std::size_t v = 0; v < n; ++v) {
        const int vi = static_cast<int>(v);
        if (holders[v].empty()) {
            report(ViolationKind::UncoveredVertex, -1, vi, -1, "vertex " + to_string(g.vertices[v].key) + " in no bag");
            continue;
        }
        std::size_t links = 0;
        for (int x : holders[v]) {
            const int y = td.nodes[static_cast<std::size_t>(x)].parent;
            if (y >= 0 && contains(td.nodes[static_cast<std::size_t>(y)].bag, vi)) ++links;
        }
        if (links + 1 != holders[v].size())
            report(ViolationKind::BrokenConnectivity, -1, vi, -1,
                   "bags holding " + to_string(g.vertices[v].key) + " are not connected");
        for (int u : g.adj[v]) {
            if (u < vi) continue;
            const auto& hu = holders[static_cast<std::size_t>(u)];
            bool shared = false;
            for (int x : holders[v]) shared = shared || std::binary_search(hu.begin(), hu.end(), x);
            if (!shared)
                report(ViolationKind::MissingEdge, -1, vi, u,
                       "edge " + to_string(g.vertices[v].key) + "-" + to_string(g.vertices[static_cast<std::size_t>(u)].key) +
                           " in no bag");
        }
    }
    if (!td.nice) return out;

    auto not_nice = [&](std::size_t x, const std::string& why) {
        report(ViolationKind::NotNice, static_cast<int>(x), -1, -1, "node " + std::to_string(x) + ": " + why);
    };
    if (!td.nodes[static_cast<std::size_t>(td.root)].bag.empty()) not_nice(static_cast<std::size_t>(td.root), "root bag not empty");
    std::unordered_set<std::uint64_t> introduced;
    for (std::size_t x = 0; x < m; ++x) {
        const TdNode& node = td.nodes[x];
        const std::size_t kids = node.children.size();
        const std::vector<int>* child = kids > 0 ? &td.nodes[static_cast<std::size_t>(node.children[0])].bag : nullptr;
        switch (node.kind) {
            case NodeKind::Bag: not_nice(x, "plain bag node"); break;
            case NodeKind::Leaf:
                if (kids != 0 || !node.bag.empty()) not_nice(x, "leaf must be empty and childless");
                break;
            case NodeKind::Introduce: {
                std::vector<int> expect = kids == 1 ? *child : std::vector<int>{};
                if (kids != 1 || contains(expect, node.vertex)) {
                    not_nice(x, "bad introduce");
                    break;
                }
                insert_sorted(expect, node.vertex);
                if (expect != node.bag) not_nice(x, "introduce bag mismatch");
                break;
            }
            case NodeKind::Forget: {
                std::vector<int> expect = kids == 1 ? *child : std::vector<int>{};
                if (kids != 1 || !contains(expect, node.vertex)) {
                    not_nice(x, "bad forget");
                    break;
                }
                erase_sorted(expect, node.vertex);
                if (expect != node.bag) not_nice(x, "forget bag mismatch");
                break;
            }
            case NodeKind::Join:
                if (kids != 2 || node.bag != *child || node.bag != td.nodes[static_cast<std::size_t>(node.children[1])].bag)
                    not_nice(x, "join children differ");
                break;
            case NodeKind::IntroduceEdge: {
                const auto [a, b] = node.edge;
                if (kids != 1 || node.bag != *child || !contains(node.bag, a) || !contains(node.bag, b) || !g.has_edge(a, b)) {
                    not_nice(x, "bad edge introduction");
                    break;
                }
                if (!introduced.insert(edge_id(a, b)).second) not_nice(x, "edge introduced twice");
                break;
            }
        }
    }
    if (introduced.size() != g.edge_count())
        report(ViolationKind::NotNice, -1, -1, -1,
               std::to_string(g.edge_count() - introduced.size()) + " edges never introduced");
    return out;
}

TreeDecomposition make_nice(const PatchGraph& g, const TreeDecomposition& td) {
    TreeDecomposition out;
    out.nice = true;
    std::unordered_set<std::uint64_t> introduced;

    auto add = [&](NodeKind kind, std::vector<int> bag, std::vector<int> children) {
        const int id = static_cast<int>(out.nodes.size());
        for (int c : children) out.nodes[static_cast<std::size_t>(c)].parent = id;
        TdNode node;
        node.kind = kind;
        node.bag = std::move(bag);
        node.children = std::move(children);
        out.nodes.push_back(std::move(node));
        return id;
    };
    auto forget = [&](int top, int v) {
        std::vector<int> bag = out.nodes[static_cast<std::size_t>(top)].bag;
        for (int w : g.adj[static_cast<std::size_t>(v)]) {
            if (!contains(bag, w) || !introduced.insert(edge_id(v, w)).second) continue;
            top = add(NodeKind::IntroduceEdge, bag, {top});
            out.nodes[static_cast<std::size_t>(top)].edge = {std::min(v, w), std::max(v, w)};
        }
        erase_sorted(bag, v);
        top = add(NodeKind::Forget, std::move(bag), {top});
        out.nodes[static_cast<std::size_t>(top)].vertex = v;
        return top;
    };
    auto introduce = [&](int top, int v) {
        std::vector<int> bag = out.nodes[static_cast<std::size_t>(top)].bag;
        insert_sorted(bag, v);
        top = add(NodeKind::Introduce, std::move(bag), {top});
        out.nodes[static_cast<std::size_t>(top)].vertex = v;
        return top;
    };
    // Forget first so intermediate bags never exceed the larger end.
    auto morph = [&](int top, const std::vector<int>& to) {
        const std::vector<int> from = out.nodes[static_cast<std::size_t>(top)].bag;
        for (int v : from)
            if (!contains(to, v)) top = forget(top, v);
        for (int v : to)
            if (!contains(from, v)) top = introduce(top, v);
        return top;
    };

    std::vector<int> top(td.nodes.size(), -1);
    for (int x : post_order(td)) {
        const TdNode& node = td.nodes[static_cast<std::size_t>(x)];
        int cur = -1;
        for (int c : node.children) {
            const int t = morph(top[static_cast<std::size_t>(c)], node.bag);
            cur = cur < 0 ? t : add(NodeKind::Join, node.bag, {cur, t});
        }
        if (cur < 0) cur = morph(add(NodeKind::Leaf, {}, {}), node.bag);
        top[static_cast<std::size_t>(x)] = cur;
    }
    out.root = morph(top[static_cast<std::size_t>(td.root)], {});
    const auto problems = validate(g, out);
    if (!problems.empty()) fail(ErrorKind::InvariantViolation, "nice decomposition invalid: " + problems.front().message);
    return out;
}

LayerAssignment peel_layers(const PatchGraph& g) {
    const std::size_t n = g.vertex_count();
    LayerAssignment la;
    la.layer.assign(n, 0);
    std::vector<char> alive(n, 1);
    std::size_t left = n;
    while (left > 0) {
        ++la.count;
        std::vector<int> outer;
        for (const Face& f : faces(g, alive))
            if (f.unbounded) outer.insert(outer.end(), f.cycle.begin(), f.cycle.end());
        std::size_t removed = 0;
        for (int v : outer) {
            if (!alive[static_cast<std::size_t>(v)]) continue;
            alive[static_cast<std::size_t>(v)] = 0;
            la.layer[static_cast<std::size_t>(v)] = la.count;
            ++removed;
        }
        if (removed == 0) fail(ErrorKind::InvariantViolation, "no unbounded face among remaining vertices");
        left -= removed;
    }
    return la;
}

}  // namespace hypertile
