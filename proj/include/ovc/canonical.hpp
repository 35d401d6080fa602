#ifndef OVC_CANONICAL_HPP
#define OVC_CANONICAL_HPP

#include <array>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "ovc/errors.hpp"
#include "ovc/graph.hpp"

namespace ovc {

// Relabeling-invariant key. Layout: for every edge, (hi, lo) repeated mult
// times in ascending (hi, lo) order; then a 0 separator; then leg vertices
// repeated mult times in ascending order. Two graphs get equal encodings iff
// one is an injective relabeling of the other.
using Encoding = std::vector<std::int32_t>;

inline constexpr int kVertexCap = 12;

inline Encoding encode_labeled(const Graph& g) {
    Encoding e;
    e.reserve(2 * static_cast<std::size_t>(g.edge_count()) + 1 +
              static_cast<std::size_t>(g.leg_count()));
    for (const auto& ed : g.edges())
        for (int k = 0; k < ed.mult; ++k) {
            e.push_back(ed.hi);
            e.push_back(ed.lo);
        }
    e.push_back(0);
    for (const auto& l : g.legs())
        for (int k = 0; k < l.mult; ++k)
            e.push_back(l.vertex);
    return e;
}

struct CanonicalForm {
    Graph graph;
    Encoding key;

    friend bool operator==(const CanonicalForm& a, const CanonicalForm& b) {
        return a.key == b.key;
    }
    friend bool operator<(const CanonicalForm& a, const CanonicalForm& b) {
        return a.key < b.key;
    }
};

namespace detail {

struct EncodingHash {
    std::size_t operator()(const Encoding& e) const {
        std::size_t h = 0xcbf29ce484222325ULL;
        for (std::int32_t v : e) {
            h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        return h;
    }
};

// Branch-and-bound search for the lexicographically minimal relabeling.
// Labels are assigned in increasing order; assigning label k determines
// exactly the key entries with hi == k, so the key grows as a prefix and
// admits sound pruning against the best complete key found so far. At each
// node only candidates whose new row is minimal are explored: an entry
// (k, lo) always precedes any entry with hi > k, so a completion through a
// non-minimal row can never be the minimum.
class CanonSearch {
public:
    explicit CanonSearch(const Graph& g) : verts_(g.vertex_set()) {
        n_ = static_cast<int>(verts_.size());
        for (int i = 0; i < n_; ++i) {
            mult_[i].fill(0);
            leg_[i] = 0;
        }
        auto local = [this](int v) {
            return static_cast<int>(std::lower_bound(verts_.begin(), verts_.end(), v) -
                                    verts_.begin());
        };
        long entries = 0;
        for (const auto& e : g.edges()) {
            int a = local(e.lo), b = local(e.hi);
            mult_[a][b] += e.mult;
            if (a != b)
                mult_[b][a] += e.mult;
            entries += e.mult;
        }
        for (const auto& l : g.legs())
            leg_[local(l.vertex)] += l.mult;
        edge_entries_ = 2 * entries;
    }

    CanonicalForm run() {
        cur_.reserve(static_cast<std::size_t>(edge_entries_));
        used_.fill(false);
        for (int u = 0; u < n_; ++u) {
            bool bare = mult_[u][u] == 0;
            for (int v = 0; bare && v < n_; ++v)
                if (mult_[u][v] > 0)
                    bare = false;
            leg_only_[u] = bare;
        }
        dfs(0);
        std::map<int, int> pi;
        for (int d = 0; d < n_; ++d)
            pi[verts_[best_assign_[d]]] = d + 1;
        return CanonicalForm{/*graph=*/relabel(pi), std::move(best_)};
    }

private:
    Graph relabel(const std::map<int, int>& pi) {
        std::vector<Graph::Edge> edges;
        std::vector<Graph::Leg> legs;
        for (int i = 0; i < n_; ++i) {
            int a = pi.at(verts_[i]);
            if (leg_[i] > 0)
                legs.push_back({a, leg_[i]});
            for (int j = i; j < n_; ++j) {
                if (mult_[i][j] > 0) {
                    int b = pi.at(verts_[j]);
                    edges.push_back({std::min(a, b), std::max(a, b), mult_[i][j]});
                }
            }
        }
        return Graph::from_parts(std::move(edges), std::move(legs));
    }

    using Row = std::vector<std::int32_t>; // lo parts of the new key entries

    Row row_of(int u, int depth) const {
        Row r;
        for (int d = 0; d < depth; ++d) {
            int m = mult_[u][assign_[d]];
            for (int k = 0; k < m; ++k)
                r.push_back(d + 1);
        }
        for (int k = 0; k < mult_[u][u]; ++k)
            r.push_back(depth + 1); // self-loop entries sort last within the row
        return r;
    }

    // Rows compare entrywise; on a tie the longer row wins, because its next
    // entry (hi == depth+1) precedes whatever the shorter row contributes at
    // a later depth.
    static bool row_less(const Row& a, const Row& b) {
        std::size_t m = std::min(a.size(), b.size());
        for (std::size_t i = 0; i < m; ++i)
            if (a[i] != b[i])
                return a[i] < b[i];
        return a.size() > b.size();
    }

    // -1: cur is already strictly below best, 0: equal so far, +1: above.
    int compare_prefix() const {
        std::size_t m = std::min(cur_.size(), best_.size());
        for (std::size_t i = 0; i < m; ++i) {
            if (cur_[i] != best_[i])
                return cur_[i] < best_[i] ? -1 : 1;
        }
        return 0;
    }

    void finish_leaf() {
        Encoding full = cur_;
        full.push_back(0);
        for (int d = 0; d < n_; ++d)
            for (int k = 0; k < leg_[assign_[d]]; ++k)
                full.push_back(d + 1);
        if (!have_best_ || full < best_) {
            best_ = std::move(full);
            best_assign_ = assign_;
            have_best_ = true;
        }
    }

    void dfs(int depth) {
        if (depth == n_) {
            finish_leaf();
            return;
        }

        // Once only leg-only vertices remain the edge part is settled, and
        // the minimal leg list is forced: descending leg multiplicity.
        bool tail = true;
        for (int u = 0; u < n_ && tail; ++u)
            if (!used_[u] && !leg_only_[u])
                tail = false;
        if (tail) {
            std::vector<int> rest;
            for (int u = 0; u < n_; ++u)
                if (!used_[u])
                    rest.push_back(u);
            std::sort(rest.begin(), rest.end(),
                      [this](int a, int b) { return leg_[a] > leg_[b]; });
            for (std::size_t i = 0; i < rest.size(); ++i)
                assign_[depth + static_cast<int>(i)] = rest[i];
            finish_leaf();
            return;
        }

        Row min_row;
        bool have_row = false;
        std::array<Row, kVertexCap> rows;
        for (int u = 0; u < n_; ++u) {
            if (used_[u])
                continue;
            rows[u] = row_of(u, depth);
            if (!have_row || row_less(rows[u], min_row)) {
                min_row = rows[u];
                have_row = true;
            }
        }

        for (int u = 0; u < n_; ++u) {
            if (used_[u] || rows[u] != min_row)
                continue;
            std::size_t mark = cur_.size();
            for (std::int32_t lo : rows[u]) {
                cur_.push_back(depth + 1);
                cur_.push_back(lo);
            }
            bool viable = true;
            if (have_best_) {
                int cmp = compare_prefix();
                if (cmp > 0) {
                    viable = false;
                } else if (cmp == 0 && cur_.size() < best_.size()) {
                    // Equal so far but best already placed an edge entry by
                    // this depth that we lack; our next entry must have a
                    // larger hi, so every completion loses.
                    std::int32_t best_next_hi = best_[cur_.size()];
                    if (best_next_hi != 0 && best_next_hi <= depth + 1)
                        viable = false;
                }
            }
            if (viable) {
                used_[u] = true;
                assign_[depth] = u;
                dfs(depth + 1);
                used_[u] = false;
            }
            cur_.resize(mark);
        }
    }

    std::vector<int> verts_;
    int n_ = 0;
    long edge_entries_ = 0;
    std::array<std::array<int, kVertexCap>, kVertexCap> mult_{};
    std::array<int, kVertexCap> leg_{};
    std::array<int, kVertexCap> assign_{};
    std::array<bool, kVertexCap> used_{};
    std::array<bool, kVertexCap> leg_only_{};
    Encoding cur_;
    Encoding best_;
    std::array<int, kVertexCap> best_assign_{};
    bool have_best_ = false;
};

} // namespace detail

/// Lexicographically minimal relabeling of g onto {1..n}. Idempotent and
/// invariant under any prior injective relabeling. Throws CapacityError
/// above the vertex cap.
inline CanonicalForm canonicalize(const Graph& g) {
    int n = g.vertex_count();
    if (n > kVertexCap)
        throw CapacityError("graph has " + std::to_string(n) +
                            " vertices, exceeding the vertex cap of " +
                            std::to_string(kVertexCap));

    thread_local std::unordered_map<Encoding, CanonicalForm, detail::EncodingHash> memo;
    Encoding raw = encode_labeled(g);
    auto hit = memo.find(raw);
    if (hit != memo.end())
        return hit->second;

    CanonicalForm result = detail::CanonSearch(g).run();
    if (memo.size() > 1u << 20)
        memo.clear();
    memo.emplace(std::move(raw), result);
    return result;
}

} // namespace ovc

#endif
