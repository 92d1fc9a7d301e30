#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "l1proj/su2.hpp"

namespace l1proj {

enum class GroupKind {
    finite_by_table,
    cyclic_product,
    discrete_abelian,  // F x Z^d with a truncation window
    torus_power,
    su2,
    direct_product,
};

enum class HaarNormalization { probability, counting };

inline std::string to_string(GroupKind k) {
    switch (k) {
        case GroupKind::finite_by_table: return "finite-by-table";
        case GroupKind::cyclic_product: return "cyclic-product";
        case GroupKind::discrete_abelian: return "discrete-abelian-with-free-part";
        case GroupKind::torus_power: return "torus-power";
        case GroupKind::su2: return "su2";
        case GroupKind::direct_product: return "direct-product";
    }
    return "?";
}

/// Canonical element encoding.  Integer payloads carry table indices,
/// residues, or lattice coordinates; angle payloads carry torus angles or an
/// SU(2) Euler triple.  Canonical means: equal group elements have equal
/// payloads (for angle kinds, up to floating-point reconstruction error).
struct GroupElement {
    std::vector<std::int64_t> ints;
    std::vector<double> angles;

    friend bool operator==(const GroupElement&, const GroupElement&) = default;
    friend auto operator<=>(const GroupElement&, const GroupElement&) = default;
};

struct QuadratureScheme {
    std::vector<GroupElement> nodes;
    std::vector<double> weights;
    HaarNormalization normalization = HaarNormalization::probability;
};

class Group;
using GroupPtr = std::shared_ptr<const Group>;

class Group {
public:
    GroupKind kind;
    std::string label;

    // finite-by-table
    std::vector<std::vector<int>> table;  // table[x][y] = index of x*y
    std::vector<int> inverse_table;
    std::vector<std::vector<int>> words;  // underlying permutation words, may be empty

    // cyclic-product / discrete-abelian
    std::vector<std::int64_t> orders;  // torsion orders
    int free_rank = 0;
    std::int64_t window = 0;  // free part truncated to [-window, window]^free_rank

    // torus-power
    int torus_dim = 0;
    int torus_nodes = 0;

    // su2: node counts (alpha, beta, gamma)
    std::array<int, 3> su2_nodes{0, 0, 0};

    // direct-product
    GroupPtr left, right;

    QuadratureScheme quadrature;
    std::string spec_json;  // the originating group-spec document, canonical dump

    std::size_t order() const {
        switch (kind) {
            case GroupKind::finite_by_table: return table.size();
            case GroupKind::cyclic_product: {
                std::size_t n = 1;
                for (auto o : orders) n *= static_cast<std::size_t>(o);
                return n;
            }
            default: return 0;  // infinite or continuous
        }
    }

    bool is_compact() const {
        switch (kind) {
            case GroupKind::finite_by_table:
            case GroupKind::cyclic_product:
            case GroupKind::torus_power:
            case GroupKind::su2: return true;
            case GroupKind::discrete_abelian: return free_rank == 0;
            case GroupKind::direct_product: return left->is_compact() && right->is_compact();
        }
        return false;
    }

    /// Expected payload sizes for elements of this group.
    std::pair<std::size_t, std::size_t> payload_shape() const {
        switch (kind) {
            case GroupKind::finite_by_table: return {1, 0};
            case GroupKind::cyclic_product: return {orders.size(), 0};
            case GroupKind::discrete_abelian: return {orders.size() + static_cast<std::size_t>(free_rank), 0};
            case GroupKind::torus_power: return {0, static_cast<std::size_t>(torus_dim)};
            case GroupKind::su2: return {0, 3};
            case GroupKind::direct_product: {
                auto [li, la] = left->payload_shape();
                auto [ri, ra] = right->payload_shape();
                return {li + ri, la + ra};
            }
        }
        return {0, 0};
    }

    void check_element(const GroupElement& x) const {
        auto [ni, na] = payload_shape();
        if (x.ints.size() != ni || x.angles.size() != na)
            throw std::invalid_argument("GroupElement payload does not match group kind " + to_string(kind));
    }

    GroupElement identity() const {
        auto [ni, na] = payload_shape();
        GroupElement e;
        e.ints.assign(ni, 0);
        e.angles.assign(na, 0.0);
        if (kind == GroupKind::finite_by_table) e.ints[0] = identity_index_;
        if (kind == GroupKind::direct_product) {
            GroupElement l = left->identity(), r = right->identity();
            return join(l, r);
        }
        return e;
    }

    GroupElement op(const GroupElement& x, const GroupElement& y) const {
        check_element(x);
        check_element(y);
        switch (kind) {
            case GroupKind::finite_by_table: {
                GroupElement z;
                z.ints = {table[static_cast<std::size_t>(x.ints[0])][static_cast<std::size_t>(y.ints[0])]};
                return z;
            }
            case GroupKind::cyclic_product:
            case GroupKind::discrete_abelian: {
                GroupElement z;
                z.ints.resize(x.ints.size());
                for (std::size_t i = 0; i < orders.size(); ++i)
                    z.ints[i] = mod_order(x.ints[i] + y.ints[i], orders[i]);
                for (std::size_t i = orders.size(); i < x.ints.size(); ++i) z.ints[i] = x.ints[i] + y.ints[i];
                return z;
            }
            case GroupKind::torus_power: {
                GroupElement z;
                z.angles.resize(x.angles.size());
                for (std::size_t i = 0; i < x.angles.size(); ++i)
                    z.angles[i] = mod_positive(x.angles[i] + y.angles[i], kTwoPi);
                return z;
            }
            case GroupKind::su2: {
                Eigen::Matrix2cd m = su2_from_euler(to_euler(x)) * su2_from_euler(to_euler(y));
                return from_euler(euler_from_su2(m));
            }
            case GroupKind::direct_product: {
                auto [xl, xr] = split(x);
                auto [yl, yr] = split(y);
                GroupElement l = left->op(xl, yl), r = right->op(xr, yr);
                return join(l, r);
            }
        }
        throw std::logic_error("unreachable");
    }

    GroupElement inv(const GroupElement& x) const {
        check_element(x);
        switch (kind) {
            case GroupKind::finite_by_table: {
                GroupElement z;
                z.ints = {inverse_table[static_cast<std::size_t>(x.ints[0])]};
                return z;
            }
            case GroupKind::cyclic_product:
            case GroupKind::discrete_abelian: {
                GroupElement z;
                z.ints.resize(x.ints.size());
                for (std::size_t i = 0; i < orders.size(); ++i) z.ints[i] = mod_order(-x.ints[i], orders[i]);
                for (std::size_t i = orders.size(); i < x.ints.size(); ++i) z.ints[i] = -x.ints[i];
                return z;
            }
            case GroupKind::torus_power: {
                GroupElement z;
                z.angles.resize(x.angles.size());
                for (std::size_t i = 0; i < x.angles.size(); ++i)
                    z.angles[i] = mod_positive(-x.angles[i], kTwoPi);
                return z;
            }
            case GroupKind::su2:
                return from_euler(euler_from_su2(su2_from_euler(to_euler(x)).adjoint()));
            case GroupKind::direct_product: {
                auto [xl, xr] = split(x);
                GroupElement l = left->inv(xl), r = right->inv(xr);
                return join(l, r);
            }
        }
        throw std::logic_error("unreachable");
    }

    GroupElement canonicalize(const GroupElement& x) const {
        check_element(x);
        switch (kind) {
            case GroupKind::finite_by_table: return x;
            case GroupKind::cyclic_product:
            case GroupKind::discrete_abelian: {
                GroupElement z = x;
                for (std::size_t i = 0; i < orders.size(); ++i) z.ints[i] = mod_order(z.ints[i], orders[i]);
                return z;
            }
            case GroupKind::torus_power: {
                GroupElement z = x;
                for (auto& a : z.angles) a = mod_positive(a, kTwoPi);
                return z;
            }
            case GroupKind::su2: return from_euler(euler_from_su2(su2_from_euler(to_euler(x))));
            case GroupKind::direct_product: {
                auto [xl, xr] = split(x);
                GroupElement l = left->canonicalize(xl), r = right->canonicalize(xr);
                return join(l, r);
            }
        }
        throw std::logic_error("unreachable");
    }

    static EulerAngles to_euler(const GroupElement& x) { return {x.angles[0], x.angles[1], x.angles[2]}; }

    static GroupElement from_euler(const EulerAngles& e) {
        GroupElement z;
        z.angles = {e.alpha, e.beta, e.gamma};
        return z;
    }

    std::pair<GroupElement, GroupElement> split(const GroupElement& x) const {
        auto [li, la] = left->payload_shape();
        GroupElement l, r;
        l.ints.assign(x.ints.begin(), x.ints.begin() + static_cast<std::ptrdiff_t>(li));
        r.ints.assign(x.ints.begin() + static_cast<std::ptrdiff_t>(li), x.ints.end());
        l.angles.assign(x.angles.begin(), x.angles.begin() + static_cast<std::ptrdiff_t>(la));
        r.angles.assign(x.angles.begin() + static_cast<std::ptrdiff_t>(la), x.angles.end());
        return {l, r};
    }

    static GroupElement join(const GroupElement& l, const GroupElement& r) {
        GroupElement z = l;
        z.ints.insert(z.ints.end(), r.ints.begin(), r.ints.end());
        z.angles.insert(z.angles.end(), r.angles.begin(), r.angles.end());
        return z;
    }

    /// Index of a node in the quadrature grid.  Exact for discrete kinds;
    /// throws for kinds whose canonical elements are not grid-addressable.
    std::optional<std::size_t> node_index(const GroupElement& x) const {
        switch (kind) {
            case GroupKind::finite_by_table: return static_cast<std::size_t>(x.ints[0]);
            case GroupKind::cyclic_product: {
                std::size_t idx = 0;
                for (std::size_t i = 0; i < orders.size(); ++i)
                    idx = idx * static_cast<std::size_t>(orders[i]) +
                          static_cast<std::size_t>(mod_order(x.ints[i], orders[i]));
                return idx;
            }
            case GroupKind::discrete_abelian: {
                std::size_t idx = 0;
                for (std::size_t i = 0; i < orders.size(); ++i)
                    idx = idx * static_cast<std::size_t>(orders[i]) +
                          static_cast<std::size_t>(mod_order(x.ints[i], orders[i]));
                for (std::size_t i = orders.size(); i < x.ints.size(); ++i) {
                    std::int64_t c = x.ints[i];
                    if (c < -window || c > window) return std::nullopt;  // outside the truncation window
                    idx = idx * static_cast<std::size_t>(2 * window + 1) + static_cast<std::size_t>(c + window);
                }
                return idx;
            }
            default: throw std::logic_error("node_index: not a grid-addressable kind");
        }
    }

    static std::int64_t mod_order(std::int64_t v, std::int64_t n) {
        std::int64_t r = v % n;
        if (r < 0) r += n;
        return r;
    }

    int identity_index_ = 0;  // finite-by-table only
};

// ---------------------------------------------------------------------------
// Haar integration.
// ---------------------------------------------------------------------------

inline complexd integrate(const Group& g, std::span<const complexd> values) {
    if (values.size() != g.quadrature.nodes.size())
        throw std::invalid_argument("integrate: value count does not match quadrature nodes");
    complexd acc = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) acc += g.quadrature.weights[i] * values[i];
    return acc;
}

template <typename F>
complexd integrate_fn(const Group& g, F&& f) {
    complexd acc = 0.0;
    for (std::size_t i = 0; i < g.quadrature.nodes.size(); ++i)
        acc += g.quadrature.weights[i] * complexd(f(g.quadrature.nodes[i]));
    return acc;
}

// ---------------------------------------------------------------------------
// Constructors.
// ---------------------------------------------------------------------------

namespace detail {

inline void validate_cayley_table(const std::vector<std::vector<int>>& table, int& identity_index,
                                  std::vector<int>& inverse_table) {
    const std::size_t n = table.size();
    if (n == 0) throw std::invalid_argument("Cayley table is empty");
    for (const auto& row : table) {
        if (row.size() != n) throw std::invalid_argument("Cayley table is not square");
        for (int v : row)
            if (v < 0 || static_cast<std::size_t>(v) >= n)
                throw std::invalid_argument("Cayley table entry out of range");
    }
    // identity
    identity_index = -1;
    for (std::size_t e = 0; e < n; ++e) {
        bool ok = true;
        for (std::size_t x = 0; x < n && ok; ++x)
            ok = (table[e][x] == static_cast<int>(x)) && (table[x][e] == static_cast<int>(x));
        if (ok) {
            identity_index = static_cast<int>(e);
            break;
        }
    }
    if (identity_index < 0) throw std::invalid_argument("Cayley table has no identity");
    // inverses
    inverse_table.assign(n, -1);
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
            if (table[x][y] == identity_index && table[y][x] == identity_index) {
                inverse_table[x] = static_cast<int>(y);
                break;
            }
        }
        if (inverse_table[x] < 0) throw std::invalid_argument("Cayley table has no inverses (not a group)");
    }
    // associativity: exhaustive for small tables, sampled otherwise
    const std::size_t assoc_cap = 64;
    if (n <= assoc_cap) {
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                for (std::size_t c = 0; c < n; ++c)
                    if (table[static_cast<std::size_t>(table[a][b])][c] !=
                        table[a][static_cast<std::size_t>(table[b][c])])
                        throw std::invalid_argument("Cayley table is not associative");
    } else {
        std::mt19937_64 rng(12345);
        std::uniform_int_distribution<std::size_t> pick(0, n - 1);
        for (int t = 0; t < 20000; ++t) {
            std::size_t a = pick(rng), b = pick(rng), c = pick(rng);
            if (table[static_cast<std::size_t>(table[a][b])][c] !=
                table[a][static_cast<std::size_t>(table[b][c])])
                throw std::invalid_argument("Cayley table is not associative");
        }
    }
}

inline void build_uniform_quadrature(Group& g, std::vector<GroupElement> nodes, HaarNormalization norm) {
    const double w = (norm == HaarNormalization::probability) ? 1.0 / static_cast<double>(nodes.size()) : 1.0;
    g.quadrature.nodes = std::move(nodes);
    g.quadrature.weights.assign(g.quadrature.nodes.size(), w);
    g.quadrature.normalization = norm;
}

inline std::vector<int> compose_words(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[static_cast<std::size_t>(b[i])];
    return c;
}

}  // namespace detail

inline GroupPtr make_group_from_table(std::vector<std::vector<int>> table, std::string label,
                                      HaarNormalization norm = HaarNormalization::probability,
                                      std::vector<std::vector<int>> words = {});

/// Finite group presented by permutation words (closed under composition).
inline GroupPtr make_group_from_words(std::vector<std::vector<int>> words, std::string label,
                                      HaarNormalization norm = HaarNormalization::probability) {
    std::sort(words.begin(), words.end());
    std::map<std::vector<int>, int> index;
    for (std::size_t i = 0; i < words.size(); ++i) index[words[i]] = static_cast<int>(i);
    const std::size_t n = words.size();
    std::vector<std::vector<int>> table(n, std::vector<int>(n));
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            auto it = index.find(detail::compose_words(words[x], words[y]));
            if (it == index.end()) throw std::invalid_argument("word set not closed under composition");
            table[x][y] = it->second;
        }
    return make_group_from_table(std::move(table), std::move(label), norm, std::move(words));
}

inline GroupPtr make_symmetric_group(int n, HaarNormalization norm = HaarNormalization::probability) {
    if (n < 1 || n > 6) throw std::invalid_argument("make_symmetric_group: supported for 1 <= n <= 6");
    std::vector<int> w(static_cast<std::size_t>(n));
    std::iota(w.begin(), w.end(), 0);
    std::vector<std::vector<int>> words;
    do {
        words.push_back(w);
    } while (std::next_permutation(w.begin(), w.end()));
    return make_group_from_words(std::move(words), "S" + std::to_string(n), norm);
}

/// Dihedral group of the n-gon, realized as vertex permutations.
inline GroupPtr make_dihedral_group(int n, HaarNormalization norm = HaarNormalization::probability) {
    if (n < 3 || n > 12) throw std::invalid_argument("make_dihedral_group: supported for 3 <= n <= 12");
    std::vector<int> rot(static_cast<std::size_t>(n)), refl(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        rot[static_cast<std::size_t>(i)] = (i + 1) % n;
        refl[static_cast<std::size_t>(i)] = (n - i) % n;
    }
    std::set<std::vector<int>> closure;
    std::vector<std::vector<int>> todo{rot, refl};
    std::vector<int> id(static_cast<std::size_t>(n));
    std::iota(id.begin(), id.end(), 0);
    closure.insert(id);
    while (!todo.empty()) {
        auto w = todo.back();
        todo.pop_back();
        if (!closure.insert(w).second) continue;
        for (const auto& g : {rot, refl}) {
            todo.push_back(detail::compose_words(w, g));
            todo.push_back(detail::compose_words(g, w));
        }
    }
    return make_group_from_words({closure.begin(), closure.end()}, "D" + std::to_string(n), norm);
}

/// Quaternion group Q8: elements (sign, axis) with axis in {1, i, j, k}.
inline GroupPtr make_quaternion_group(HaarNormalization norm = HaarNormalization::probability) {
    // index = axis * 2 + (sign < 0); axis 0 is the scalar unit
    auto mul = [](int a, int b) {
        const int sa = a % 2, sb = b % 2, xa = a / 2, xb = b / 2;
        static const int axis[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
        static const int sign[4][4] = {{+1, +1, +1, +1}, {+1, -1, +1, -1}, {+1, -1, -1, +1}, {+1, +1, -1, -1}};
        int s = sign[xa][xb];
        if (sa) s = -s;
        if (sb) s = -s;
        return axis[xa][xb] * 2 + (s < 0 ? 1 : 0);
    };
    std::vector<std::vector<int>> table(8, std::vector<int>(8));
    for (int a = 0; a < 8; ++a)
        for (int b = 0; b < 8; ++b) table[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = mul(a, b);
    return make_group_from_table(std::move(table), "Q8", norm);
}

inline GroupPtr make_group_from_table(std::vector<std::vector<int>> table, std::string label,
                                      HaarNormalization norm, std::vector<std::vector<int>> words) {
    auto g = std::make_shared<Group>();
    g->kind = GroupKind::finite_by_table;
    g->label = std::move(label);
    g->table = std::move(table);
    g->words = std::move(words);
    detail::validate_cayley_table(g->table, g->identity_index_, g->inverse_table);
    std::vector<GroupElement> nodes(g->table.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) nodes[i].ints = {static_cast<std::int64_t>(i)};
    detail::build_uniform_quadrature(*g, std::move(nodes), norm);
    nlohmann::json spec;
    spec["kind"] = "finite-by-table";
    spec["label"] = g->label;
    spec["table"] = g->table;
    if (norm == HaarNormalization::counting) spec["normalization"] = "counting";
    g->spec_json = spec.dump();
    return g;
}

inline GroupPtr make_cyclic_product(std::vector<std::int64_t> orders, HaarNormalization norm) {
    if (orders.empty()) throw std::invalid_argument("cyclic-product: orders must be nonempty");
    for (auto o : orders)
        if (o < 1) throw std::invalid_argument("cyclic-product: orders must be >= 1");
    auto g = std::make_shared<Group>();
    g->kind = GroupKind::cyclic_product;
    g->orders = std::move(orders);
    std::string lbl = "Z";
    for (std::size_t i = 0; i < g->orders.size(); ++i)
        lbl += (i ? "xZ" : "") + std::to_string(g->orders[i]);
    g->label = lbl;
    std::size_t n = g->order();
    std::vector<GroupElement> nodes(n);
    for (std::size_t idx = 0; idx < n; ++idx) {
        std::size_t rem = idx;
        GroupElement e;
        e.ints.resize(g->orders.size());
        for (std::size_t i = g->orders.size(); i-- > 0;) {
            e.ints[i] = static_cast<std::int64_t>(rem % static_cast<std::size_t>(g->orders[i]));
            rem /= static_cast<std::size_t>(g->orders[i]);
        }
        // node order must match Group::node_index (mixed radix, most significant first)
        std::size_t check = 0;
        for (std::size_t i = 0; i < g->orders.size(); ++i)
            check = check * static_cast<std::size_t>(g->orders[i]) + static_cast<std::size_t>(e.ints[i]);
        nodes[check] = e;
    }
    detail::build_uniform_quadrature(*g, std::move(nodes), norm);
    nlohmann::json spec;
    spec["kind"] = "cyclic-product";
    spec["orders"] = g->orders;
    if (norm == HaarNormalization::probability) spec["normalization"] = "probability";
    g->spec_json = spec.dump();
    return g;
}

inline GroupPtr make_abelian_with_free_part(std::vector<std::int64_t> torsion_orders, int free_rank,
                                            std::int64_t window) {
    for (auto o : torsion_orders)
        if (o < 1) throw std::invalid_argument("torsion orders must be >= 1");
    if (free_rank < 0) throw std::invalid_argument("free_rank must be >= 0");
    if (free_rank > 0 && window < 1) throw std::invalid_argument("window must be >= 1 when free_rank > 0");
    auto g = std::make_shared<Group>();
    g->kind = GroupKind::discrete_abelian;
    g->orders = std::move(torsion_orders);
    g->free_rank = free_rank;
    g->window = window;
    std::string lbl;
    for (auto o : g->orders) lbl += "Z" + std::to_string(o) + "x";
    for (int i = 0; i < free_rank; ++i) lbl += "Zx";
    if (!lbl.empty()) lbl.pop_back();
    g->label = lbl.empty() ? "trivial" : lbl;

    std::size_t torsion_count = 1;
    for (auto o : g->orders) torsion_count *= static_cast<std::size_t>(o);
    const std::size_t span1d = static_cast<std::size_t>(2 * window + 1);
    std::size_t free_count = 1;
    for (int i = 0; i < free_rank; ++i) free_count *= span1d;
    std::vector<GroupElement> nodes;
    nodes.reserve(torsion_count * free_count);
    for (std::size_t t = 0; t < torsion_count; ++t) {
        GroupElement base;
        base.ints.resize(g->orders.size() + static_cast<std::size_t>(free_rank));
        std::size_t rem = t;
        for (std::size_t i = g->orders.size(); i-- > 0;) {
            base.ints[i] = static_cast<std::int64_t>(rem % static_cast<std::size_t>(g->orders[i]));
            rem /= static_cast<std::size_t>(g->orders[i]);
        }
        for (std::size_t f = 0; f < free_count; ++f) {
            GroupElement e = base;
            std::size_t fr = f;
            for (std::size_t i = static_cast<std::size_t>(free_rank); i-- > 0;) {
                e.ints[g->orders.size() + i] = static_cast<std::int64_t>(fr % span1d) - window;
                fr /= span1d;
            }
            nodes.push_back(std::move(e));
        }
    }
    // node_index expects torsion-major, then free offsets; rebuild in that order
    std::sort(nodes.begin(), nodes.end(), [&](const GroupElement& a, const GroupElement& b) {
        return *g->node_index(a) < *g->node_index(b);
    });
    detail::build_uniform_quadrature(*g, std::move(nodes), HaarNormalization::counting);
    nlohmann::json spec;
    spec["kind"] = "discrete-abelian-with-free-part";
    spec["torsion_orders"] = g->orders;
    spec["free_rank"] = g->free_rank;
    spec["window"] = g->window;
    g->spec_json = spec.dump();
    return g;
}

inline GroupPtr make_torus(int dim, int nodes_per_axis) {
    if (dim < 1) throw std::invalid_argument("torus-power: dim must be >= 1");
    if (nodes_per_axis < 2) throw std::invalid_argument("torus-power: nodes_per_axis must be >= 2");
    auto g = std::make_shared<Group>();
    g->kind = GroupKind::torus_power;
    g->torus_dim = dim;
    g->torus_nodes = nodes_per_axis;
    g->label = "T" + std::to_string(dim);
    std::size_t count = 1;
    for (int i = 0; i < dim; ++i) count *= static_cast<std::size_t>(nodes_per_axis);
    std::vector<GroupElement> nodes(count);
    for (std::size_t idx = 0; idx < count; ++idx) {
        GroupElement e;
        e.angles.resize(static_cast<std::size_t>(dim));
        std::size_t rem = idx;
        for (std::size_t i = static_cast<std::size_t>(dim); i-- > 0;) {
            e.angles[i] = kTwoPi * static_cast<double>(rem % static_cast<std::size_t>(nodes_per_axis)) /
                          nodes_per_axis;
            rem /= static_cast<std::size_t>(nodes_per_axis);
        }
        nodes[idx] = std::move(e);
    }
    detail::build_uniform_quadrature(*g, std::move(nodes), HaarNormalization::probability);
    nlohmann::json spec;
    spec["kind"] = "torus-power";
    spec["dim"] = dim;
    spec["nodes_per_axis"] = nodes_per_axis;
    g->spec_json = spec.dump();
    return g;
}

/// Product quadrature on SU(2): trapezoid in alpha and gamma, Gauss-Legendre
/// in cos(beta).  Exact for Wigner-polynomial integrands whose alpha/gamma
/// frequencies stay below the respective node counts.
inline GroupPtr make_su2(int n_alpha, int n_beta, int n_gamma) {
    if (n_alpha < 2 || n_beta < 2 || n_gamma < 2)
        throw std::invalid_argument("su2: node counts must be >= 2 per angle");
    auto g = std::make_shared<Group>();
    g->kind = GroupKind::su2;
    g->su2_nodes = {n_alpha, n_beta, n_gamma};
    g->label = "SU2";
    GaussLegendre gl = gauss_legendre(n_beta);
    g->quadrature.normalization = HaarNormalization::probability;
    g->quadrature.nodes.reserve(static_cast<std::size_t>(n_alpha * n_beta * n_gamma));
    g->quadrature.weights.reserve(g->quadrature.nodes.capacity());
    for (int ia = 0; ia < n_alpha; ++ia) {
        const double alpha = kTwoPi * ia / n_alpha;
        for (int ib = 0; ib < n_beta; ++ib) {
            const double beta = std::acos(gl.nodes[static_cast<std::size_t>(ib)]);
            const double wb = gl.weights[static_cast<std::size_t>(ib)];
            for (int ig = 0; ig < n_gamma; ++ig) {
                const double gamma = kFourPi * ig / n_gamma;
                GroupElement e;
                e.angles = {alpha, beta, gamma};
                g->quadrature.nodes.push_back(std::move(e));
                g->quadrature.weights.push_back(wb / (2.0 * n_alpha * n_gamma));
            }
        }
    }
    nlohmann::json spec;
    spec["kind"] = "su2";
    spec["su2_nodes"] = {n_alpha, n_beta, n_gamma};
    g->spec_json = spec.dump();
    return g;
}

inline GroupPtr make_direct_product(GroupPtr a, GroupPtr b) {
    if (!a || !b) throw std::invalid_argument("direct-product: null factor");
    if (a->quadrature.normalization != b->quadrature.normalization)
        throw std::invalid_argument("direct-product: factors must share a Haar normalization");
    auto g = std::make_shared<Group>();
    g->kind = GroupKind::direct_product;
    g->left = a;
    g->right = b;
    g->label = a->label + "x" + b->label;
    g->quadrature.normalization = a->quadrature.normalization;
    for (std::size_t i = 0; i < a->quadrature.nodes.size(); ++i)
        for (std::size_t j = 0; j < b->quadrature.nodes.size(); ++j) {
            g->quadrature.nodes.push_back(Group::join(a->quadrature.nodes[i], b->quadrature.nodes[j]));
            g->quadrature.weights.push_back(a->quadrature.weights[i] * b->quadrature.weights[j]);
        }
    nlohmann::json spec;
    spec["kind"] = "direct-product";
    spec["factors"] = {nlohmann::json::parse(a->spec_json), nlohmann::json::parse(b->spec_json)};
    g->spec_json = spec.dump();
    return g;
}

// ---------------------------------------------------------------------------
// Group-spec documents (JSON).  The shipped schema lives in schemas/.
// ---------------------------------------------------------------------------

inline HaarNormalization parse_normalization(const nlohmann::json& spec, HaarNormalization fallback) {
    if (!spec.contains("normalization")) return fallback;
    const std::string s = spec.at("normalization").get<std::string>();
    if (s == "probability") return HaarNormalization::probability;
    if (s == "counting") return HaarNormalization::counting;
    throw std::invalid_argument("group spec: unknown normalization '" + s + "'");
}

inline GroupPtr make_group(const nlohmann::json& spec) {
    if (!spec.is_object() || !spec.contains("kind"))
        throw std::invalid_argument("group spec: missing 'kind'");
    const std::string kind = spec.at("kind").get<std::string>();
    if (kind == "finite-by-table") {
        if (!spec.contains("table")) throw std::invalid_argument("group spec: finite-by-table needs 'table'");
        auto table = spec.at("table").get<std::vector<std::vector<int>>>();
        std::string label = spec.value("label", std::string("G") + std::to_string(table.size()));
        auto norm = parse_normalization(spec, HaarNormalization::probability);
        return make_group_from_table(std::move(table), std::move(label), norm);
    }
    if (kind == "cyclic-product") {
        if (!spec.contains("orders")) throw std::invalid_argument("group spec: cyclic-product needs 'orders'");
        auto norm = parse_normalization(spec, HaarNormalization::counting);
        return make_cyclic_product(spec.at("orders").get<std::vector<std::int64_t>>(), norm);
    }
    if (kind == "discrete-abelian-with-free-part") {
        auto torsion = spec.value("torsion_orders", std::vector<std::int64_t>{});
        int rank = spec.value("free_rank", 0);
        std::int64_t window = spec.value("window", std::int64_t{4});
        return make_abelian_with_free_part(std::move(torsion), rank, window);
    }
    if (kind == "torus-power") return make_torus(spec.value("dim", 1), spec.value("nodes_per_axis", 16));
    if (kind == "su2") {
        auto nodes = spec.value("su2_nodes", std::vector<int>{16, 32, 16});
        if (nodes.size() != 3) throw std::invalid_argument("group spec: su2_nodes must have 3 entries");
        return make_su2(nodes[0], nodes[1], nodes[2]);
    }
    if (kind == "direct-product") {
        if (!spec.contains("factors") || !spec.at("factors").is_array() || spec.at("factors").size() != 2)
            throw std::invalid_argument("group spec: direct-product needs exactly 2 'factors'");
        return make_direct_product(make_group(spec.at("factors")[0]), make_group(spec.at("factors")[1]));
    }
    throw std::invalid_argument("group spec: unsupported kind '" + kind + "'");
}

inline GroupPtr make_group(const std::string& json_text) {
    return make_group(nlohmann::json::parse(json_text));
}

/// FNV-1a hash of the canonical spec document, embedded in reports.
inline std::string group_spec_hash(const Group& g) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : g.spec_json) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

}  // namespace l1proj
