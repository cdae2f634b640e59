#pragma once

// Exact algebra of words in free groups: free reduction, cyclic reduction,
// conjugacy, roots, and Stallings subgroup graphs.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ggt::words {

// Signed generator index: +(i+1) is generator i, -(i+1) its inverse.
using Letter = std::int32_t;

inline int letter_gen(Letter l) { return std::abs(l) - 1; }

class Alphabet {
public:
    Alphabet() = default;

    explicit Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
        for (std::size_t i = 0; i < names_.size(); ++i) {
            if (names_[i].empty())
                throw std::invalid_argument("alphabet: empty generator name");
            if (!index_.emplace(names_[i], static_cast<int>(i)).second)
                throw std::invalid_argument("alphabet: duplicate generator name " + names_[i]);
        }
    }

    int size() const { return static_cast<int>(names_.size()); }

    const std::string& name(int i) const { return names_.at(static_cast<std::size_t>(i)); }

    std::optional<int> index(const std::string& n) const {
        auto it = index_.find(n);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    bool operator==(const Alphabet& o) const { return names_ == o.names_; }

private:
    std::vector<std::string> names_;
    std::map<std::string, int> index_;
};

// A freely reduced word.  The only way to build one is through reduce() /
// the algebraic operations, so the invariant holds by construction.
class Word {
public:
    Word() = default;

    const std::vector<Letter>& letters() const { return ls_; }
    std::size_t size() const { return ls_.size(); }
    bool empty() const { return ls_.empty(); }
    Letter at(std::size_t i) const { return ls_[i]; }

    Word inverse() const {
        Word r;
        r.ls_.reserve(ls_.size());
        for (auto it = ls_.rbegin(); it != ls_.rend(); ++it) r.ls_.push_back(-*it);
        return r;
    }

    // Length-then-lex order; used whenever a canonical witness is needed.
    bool operator<(const Word& o) const {
        if (ls_.size() != o.ls_.size()) return ls_.size() < o.ls_.size();
        return ls_ < o.ls_;
    }
    bool operator==(const Word& o) const { return ls_ == o.ls_; }
    bool operator!=(const Word& o) const { return ls_ != o.ls_; }

private:
    friend Word reduce(const std::vector<Letter>& raw);
    std::vector<Letter> ls_;
};

// Unique freely reduced representative, by a single stack pass.
inline Word reduce(const std::vector<Letter>& raw) {
    Word w;
    auto& out = w.ls_;
    out.reserve(raw.size());
    for (Letter l : raw) {
        if (l == 0) throw std::invalid_argument("reduce: zero letter");
        if (!out.empty() && out.back() == -l)
            out.pop_back();
        else
            out.push_back(l);
    }
    return w;
}

inline Word concat(const Word& u, const Word& v) {
    std::vector<Letter> raw = u.letters();
    raw.insert(raw.end(), v.letters().begin(), v.letters().end());
    return reduce(raw);
}

inline Word conjugate(const Word& g, const Word& x) {
    // g x g^-1
    return concat(concat(g, x), g.inverse());
}

inline Word power(const Word& w, long long k) {
    Word r;
    Word base = k < 0 ? w.inverse() : w;
    long long n = k < 0 ? -k : k;
    for (long long i = 0; i < n; ++i) r = concat(r, base);
    return r;
}

inline Word letter_word(Letter l) { return reduce({l}); }

// w = conjugator . core . conjugator^-1 with core cyclically reduced.
struct CyclicForm {
    Word core;
    Word conjugator;
};

inline CyclicForm cyclic_reduce(const Word& w) {
    std::vector<Letter> ls = w.letters();
    std::vector<Letter> conj;
    std::size_t lo = 0, hi = ls.size();
    while (hi - lo >= 2 && ls[lo] == -ls[hi - 1]) {
        conj.push_back(ls[lo]);
        ++lo;
        --hi;
    }
    CyclicForm r;
    r.core = reduce(std::vector<Letter>(ls.begin() + static_cast<std::ptrdiff_t>(lo),
                                        ls.begin() + static_cast<std::ptrdiff_t>(hi)));
    r.conjugator = reduce(conj);
    return r;
}

inline bool is_cyclically_reduced(const Word& w) {
    return w.size() < 2 || w.at(0) != -w.at(w.size() - 1);
}

inline Word rotate(const Word& w, std::size_t k) {
    std::vector<Letter> ls = w.letters();
    std::rotate(ls.begin(), ls.begin() + static_cast<std::ptrdiff_t>(k % std::max<std::size_t>(1, ls.size())),
                ls.end());
    return reduce(ls);
}

// Conjugator gamma with gamma u gamma^-1 = v, or absent.  Exact: compares
// cyclic cores over all rotations.  The witness is canonical (shortest, then
// lexicographically least among all valid conjugators arising from rotations
// composed with powers of the core).
inline std::optional<Word> free_conjugator(const Word& u, const Word& v) {
    CyclicForm cu = cyclic_reduce(u);
    CyclicForm cv = cyclic_reduce(v);
    if (cu.core.size() != cv.core.size()) return std::nullopt;
    if (cu.core.empty()) return Word();  // both trivial
    std::optional<Word> best;
    auto consider = [&](const Word& g) {
        if (!best || g < *best) best = g;
    };
    const std::size_t n = cu.core.size();
    for (std::size_t k = 0; k < n; ++k) {
        // core_u = x y with |x| = k; rotation y x == core_v means
        // core_v = x^-1 core_u x.
        if (rotate(cu.core, k) == cv.core) {
            std::vector<Letter> xl(cu.core.letters().begin(),
                                   cu.core.letters().begin() + static_cast<std::ptrdiff_t>(k));
            Word x = reduce(xl);
            // gamma = q x^-1 p^-1 conjugates u to v.
            Word g = concat(concat(cv.conjugator, x.inverse()), cu.conjugator.inverse());
            consider(g);
            // Composing with central powers of the core can shorten the witness.
            for (int e : {-1, 1}) {
                Word g2 = concat(concat(cv.conjugator, concat(power(cv.core, e), x.inverse())),
                                 cu.conjugator.inverse());
                consider(g2);
            }
        }
    }
    return best;
}

// Maximal root: the unique r with w = r^k, k maximal.  w must be nontrivial.
struct RootForm {
    Word root;
    long long exponent = 0;
};

inline RootForm maximal_root(const Word& w) {
    if (w.empty()) throw std::invalid_argument("maximal_root: trivial word");
    CyclicForm c = cyclic_reduce(w);
    const std::size_t n = c.core.size();
    for (std::size_t d = 1; d <= n; ++d) {
        if (n % d != 0) continue;
        std::vector<Letter> head(c.core.letters().begin(),
                                 c.core.letters().begin() + static_cast<std::ptrdiff_t>(d));
        Word cand = reduce(head);
        if (power(cand, static_cast<long long>(n / d)) == c.core) {
            RootForm r;
            r.root = conjugate(c.conjugator, cand);
            r.exponent = static_cast<long long>(n / d);
            return r;
        }
    }
    RootForm r;  // unreachable: d = n always matches
    r.root = w;
    r.exponent = 1;
    return r;
}

inline bool is_proper_power(const Word& w) {
    return !w.empty() && maximal_root(w).exponent > 1;
}

// If u = w^k for some integer k, return k.
inline std::optional<long long> power_of(const Word& u, const Word& w) {
    if (u.empty()) return 0;
    if (w.empty()) return std::nullopt;
    long long bound = static_cast<long long>(u.size() / std::max<std::size_t>(1, cyclic_reduce(w).core.size())) + 1;
    for (long long k = 1; k <= bound; ++k) {
        if (power(w, k) == u) return k;
        if (power(w, -k) == u) return -k;
    }
    return std::nullopt;
}

// Folded core graph of a finitely generated subgroup of a free group.
// Vertices are renumbered canonically (BFS from the base, edges visited in
// label order), so structural equality is meaningful.
class SubgroupGraph {
public:
    SubgroupGraph() = default;

    static SubgroupGraph fold(int alphabet_size, const std::vector<Word>& generators) {
        if (generators.empty())
            throw std::invalid_argument("stallings_fold: empty generator list");
        SubgroupGraph g;
        g.alphabet_size_ = alphabet_size;
        // Flower of loops at the base.
        std::vector<std::multimap<Letter, int>> adj(1);
        auto add_edge = [&](int a, Letter l, int b) {
            adj[static_cast<std::size_t>(a)].emplace(l, b);
            adj[static_cast<std::size_t>(b)].emplace(-l, a);
        };
        for (const Word& w : generators) {
            if (w.empty()) continue;
            int prev = 0;
            for (std::size_t i = 0; i + 1 < w.size(); ++i) {
                adj.emplace_back();
                int nv = static_cast<int>(adj.size()) - 1;
                add_edge(prev, w.at(i), nv);
                prev = nv;
            }
            add_edge(prev, w.at(w.size() - 1), 0);
        }
        fold_in_place(adj);
        core_in_place(adj);
        g.build_canonical(adj);
        return g;
    }

    bool member(const Word& g) const {
        if (adj_.empty()) return g.empty();
        int v = 0;
        for (Letter l : g.letters()) {
            auto it = adj_[static_cast<std::size_t>(v)].find(l);
            if (it == adj_[static_cast<std::size_t>(v)].end()) return false;
            v = it->second;
        }
        return v == 0;
    }

    int vertex_count() const { return static_cast<int>(adj_.size()); }

    int alphabet_size() const { return alphabet_size_; }

    // Rank of the subgroup: edges - vertices + 1 for the connected core.
    int rank() const {
        std::size_t half_edges = 0;
        for (const auto& m : adj_) half_edges += m.size();
        return static_cast<int>(half_edges / 2) - vertex_count() + 1;
    }

    // A free basis: spanning-tree words for the non-tree edges.
    std::vector<Word> basis() const {
        std::vector<Word> out;
        if (adj_.empty()) return out;
        std::vector<int> parent(adj_.size(), -1);
        std::vector<Letter> plabel(adj_.size(), 0);
        std::vector<bool> seen(adj_.size(), false);
        std::vector<int> order;
        seen[0] = true;
        order.push_back(0);
        for (std::size_t qi = 0; qi < order.size(); ++qi) {
            int v = order[qi];
            for (const auto& [l, u] : adj_[static_cast<std::size_t>(v)]) {
                if (!seen[static_cast<std::size_t>(u)]) {
                    seen[static_cast<std::size_t>(u)] = true;
                    parent[static_cast<std::size_t>(u)] = v;
                    plabel[static_cast<std::size_t>(u)] = l;
                    order.push_back(u);
                }
            }
        }
        auto path_to = [&](int v) {
            std::vector<Letter> rev;
            while (v != 0) {
                rev.push_back(plabel[static_cast<std::size_t>(v)]);
                v = parent[static_cast<std::size_t>(v)];
            }
            std::reverse(rev.begin(), rev.end());
            return reduce(rev);
        };
        // Each positive non-tree edge yields one basis element.
        std::vector<std::vector<bool>> used(adj_.size());
        for (int v : order) {
            for (const auto& [l, u] : adj_[static_cast<std::size_t>(v)]) {
                if (l < 0) continue;
                bool tree_edge = (parent[static_cast<std::size_t>(u)] == v &&
                                  plabel[static_cast<std::size_t>(u)] == l) ||
                                 (parent[static_cast<std::size_t>(v)] == u &&
                                  plabel[static_cast<std::size_t>(v)] == -l);
                if (tree_edge) continue;
                Word w = concat(concat(path_to(v), letter_word(l)), path_to(u).inverse());
                if (!w.empty()) out.push_back(w);
            }
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    bool operator==(const SubgroupGraph& o) const {
        return alphabet_size_ == o.alphabet_size_ && adj_ == o.adj_;
    }

private:
    static void fold_in_place(std::vector<std::multimap<Letter, int>>& adj) {
        std::vector<int> uf(adj.size());
        std::iota(uf.begin(), uf.end(), 0);
        std::function<int(int)> find = [&](int x) {
            while (uf[static_cast<std::size_t>(x)] != x) {
                uf[static_cast<std::size_t>(x)] = uf[static_cast<std::size_t>(uf[static_cast<std::size_t>(x)])];
                x = uf[static_cast<std::size_t>(x)];
            }
            return x;
        };
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t v = 0; v < adj.size() && !changed; ++v) {
                if (find(static_cast<int>(v)) != static_cast<int>(v)) continue;
                // Collect current edges of the class representative.
                std::map<Letter, int> first;
                for (auto& [l, u0] : adj[v]) {
                    int u = find(u0);
                    auto it = first.find(l);
                    if (it == first.end()) {
                        first.emplace(l, u);
                    } else if (it->second != u) {
                        // Fold: merge u with it->second (keep the smaller root).
                        int a = it->second, b = u;
                        if (a > b) std::swap(a, b);
                        uf[static_cast<std::size_t>(find(b))] = find(a);
                        changed = true;
                        break;
                    }
                }
            }
            if (changed) {
                // Rebuild adjacency through the union-find.
                std::vector<std::multimap<Letter, int>> merged(adj.size());
                for (std::size_t v = 0; v < adj.size(); ++v) {
                    int rv = find(static_cast<int>(v));
                    for (auto& [l, u] : adj[v])
                        merged[static_cast<std::size_t>(rv)].emplace(l, find(u));
                }
                // Deduplicate parallel identical edges.
                for (auto& m : merged) {
                    std::map<Letter, std::vector<int>> uniq;
                    for (auto& [l, u] : m) uniq[l].push_back(u);
                    m.clear();
                    for (auto& [l, us] : uniq) {
                        std::sort(us.begin(), us.end());
                        us.erase(std::unique(us.begin(), us.end()), us.end());
                        for (int u : us) m.emplace(l, u);
                    }
                }
                adj = std::move(merged);
                // Base may have been merged away from index 0: root 0 stays 0
                // because we always keep the smaller index, and 0 is minimal.
            }
        }
    }

    static void core_in_place(std::vector<std::multimap<Letter, int>>& adj) {
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t v = 1; v < adj.size(); ++v) {
                if (adj[v].size() == 1) {
                    auto [l, u] = *adj[v].begin();
                    adj[v].clear();
                    auto& m = adj[static_cast<std::size_t>(u)];
                    for (auto it = m.begin(); it != m.end(); ++it) {
                        if (it->first == -l && it->second == static_cast<int>(v)) {
                            m.erase(it);
                            break;
                        }
                    }
                    changed = true;
                }
            }
        }
    }

    void build_canonical(const std::vector<std::multimap<Letter, int>>& adj) {
        // BFS from base 0, neighbors in label order (1,-1,2,-2,...).
        std::vector<int> newid(adj.size(), -1);
        std::vector<int> order;
        newid[0] = 0;
        order.push_back(0);
        auto label_rank = [](Letter l) { return std::abs(l) * 2 + (l < 0 ? 1 : 0); };
        for (std::size_t qi = 0; qi < order.size(); ++qi) {
            int v = order[qi];
            std::vector<std::pair<Letter, int>> edges(adj[static_cast<std::size_t>(v)].begin(),
                                                      adj[static_cast<std::size_t>(v)].end());
            std::sort(edges.begin(), edges.end(), [&](auto& a, auto& b) {
                if (label_rank(a.first) != label_rank(b.first)) return label_rank(a.first) < label_rank(b.first);
                return newid[static_cast<std::size_t>(a.second)] != -1 &&
                       (newid[static_cast<std::size_t>(b.second)] == -1 ||
                        newid[static_cast<std::size_t>(a.second)] < newid[static_cast<std::size_t>(b.second)]);
            });
            for (auto& [l, u] : edges) {
                if (newid[static_cast<std::size_t>(u)] == -1) {
                    newid[static_cast<std::size_t>(u)] = static_cast<int>(order.size());
                    order.push_back(u);
                }
            }
        }
        adj_.assign(order.size(), {});
        for (std::size_t v = 0; v < adj.size(); ++v) {
            if (newid[v] == -1) continue;  // unreachable junk
            for (auto& [l, u] : adj[v])
                adj_[static_cast<std::size_t>(newid[v])][l] = newid[static_cast<std::size_t>(u)];
        }
    }

    std::vector<std::map<Letter, int>> adj_;
    int alphabet_size_ = 0;
};

inline SubgroupGraph stallings_fold(int alphabet_size, const std::vector<Word>& generators) {
    return SubgroupGraph::fold(alphabet_size, generators);
}

inline bool member(const Word& g, const SubgroupGraph& h) { return h.member(g); }

// ---- serialization ----

inline std::string to_string(const Word& w, const Alphabet& a) {
    std::ostringstream os;
    bool first = true;
    for (Letter l : w.letters()) {
        if (!first) os << ' ';
        first = false;
        os << a.name(letter_gen(l));
        if (l < 0) os << "^-1";
    }
    return os.str();
}

inline Word parse_word(const std::string& s, const Alphabet& a) {
    std::istringstream is(s);
    std::string tok;
    std::vector<Letter> raw;
    while (is >> tok) {
        bool inv = false;
        if (tok.size() > 3 && tok.substr(tok.size() - 3) == "^-1") {
            inv = true;
            tok = tok.substr(0, tok.size() - 3);
        }
        auto idx = a.index(tok);
        if (!idx) throw std::invalid_argument("unknown symbol: " + tok);
        Letter l = static_cast<Letter>(*idx + 1);
        raw.push_back(inv ? -l : l);
    }
    return reduce(raw);
}

}  // namespace ggt::words
