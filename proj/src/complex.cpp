#include "coxdes/complex.hpp"

#include "coxdes/errors.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <numeric>
#include <set>

namespace coxdes {

namespace {

class DisjointSets {
public:
    explicit DisjointSets(int n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

    int find(int x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent_[std::max(a, b)] = std::min(a, b);
    }

private:
    std::vector<int> parent_;
};

}  // namespace

FaceComplex enumerate_faces(const ProductGroup& g, const ComplexCaps& caps) {
    if (g.rank() > caps.max_rank)
        throw CapExceeded("rank " + std::to_string(g.rank()) + " exceeds the complex cap " +
                          std::to_string(caps.max_rank));
    FaceComplex c;
    c.graph = build_cayley_graph(g, caps.max_order);
    c.rank = g.rank();
    const int r = c.rank, size = c.graph.size();
    const std::uint64_t full = (std::uint64_t{1} << r);
    for (std::uint64_t I = 0; I < full; ++I) {
        for (std::uint64_t J = 0; J < full; ++J) {
            DisjointSets sets(size);
            for (int s = 0; s < r; ++s) {
                if (I >> s & 1)
                    for (int i = 0; i < size; ++i) sets.unite(i, c.graph.left[s][i]);
                if (J >> s & 1)
                    for (int i = 0; i < size; ++i) sets.unite(i, c.graph.right[s][i]);
            }
            const int dim = (r - std::popcount(I)) + (r - std::popcount(J)) - 1;
            const bool codim1 = dim == 2 * r - 2;
            // root -> (best element, ties at best length, members)
            std::vector<int> best(size, -1), ties(size, 0);
            std::vector<std::vector<int>> members(codim1 ? size : 0);
            for (int i = 0; i < size; ++i) {
                const int root = sets.find(i);
                if (codim1) members[root].push_back(i);
                if (best[root] < 0 || c.graph.length[i] < c.graph.length[best[root]]) {
                    best[root] = i;
                    ties[root] = 1;
                } else if (c.graph.length[i] == c.graph.length[best[root]]) {
                    ++ties[root];
                }
            }
            for (int i = 0; i < size; ++i) {
                if (sets.find(i) != i) continue;
                if (ties[i] != 1)
                    throw ConsistencyError("double coset with " + std::to_string(ties[i]) +
                                           " minimal-length elements");
                Face f{I, J, best[i], dim, {}};
                if (codim1) f.facets = std::move(members[i]);
                c.faces.push_back(std::move(f));
            }
        }
    }
    return c;
}

std::vector<Integer> f_vector(const FaceComplex& c) {
    std::vector<Integer> f(2 * c.rank + 1, 0);
    for (const auto& face : c.faces) ++f[face.dimension + 1];
    return f;
}

std::vector<Integer> h_vector(const std::vector<Integer>& f) {
    const int d = static_cast<int>(f.size()) - 1;
    std::vector<Integer> h(d + 1, 0);
    for (int k = 0; k <= d; ++k)
        for (int i = 0; i <= k; ++i) {
            const Integer term = binomial(d - i, k - i) * f[i];
            if ((k - i) % 2) h[k] -= term;
            else h[k] += term;
        }
    return h;
}

Integer euler_characteristic(const std::vector<Integer>& f) {
    Integer chi = 0;
    for (std::size_t i = 1; i < f.size(); ++i) {
        if ((i - 1) % 2) chi -= f[i];
        else chi += f[i];
    }
    return chi;
}

std::vector<Integer> t_tally(const FaceComplex& c) {
    std::vector<Integer> tally(2 * c.rank + 1, 0);
    for (const auto& w : c.graph.elements) ++tally[t_statistic(w)];
    return tally;
}

HIdentity h_polynomial_identity_check(const FaceComplex& c) {
    HIdentity out;
    out.h = h_vector(f_vector(c));
    out.tally = t_tally(c);
    out.holds = out.h == out.tally;
    return out;
}

GalleryReport gallery_checks(const FaceComplex& c) {
    GalleryReport rep;
    const auto& gr = c.graph;
    const int size = gr.size(), r = c.rank;
    const auto note = [&](const std::string& what) {
        if (!rep.counterexample) rep.counterexample = what;
    };

    std::set<std::pair<int, int>> generator_edges, face_edges;
    for (int s = 0; s < r; ++s)
        for (int i = 0; i < size; ++i)
            for (int v : {gr.left[s][i], gr.right[s][i]})
                if (v != i) generator_edges.emplace(std::min(i, v), std::max(i, v));

    std::vector<int> walls(size, 0), walls_total(size, 0);
    std::vector<std::set<int>> lower(size);
    for (const auto& face : c.faces) {
        if (face.dimension != 2 * r - 2) continue;
        if (face.facets.size() != 2) {
            rep.thin = false;
            note("codimension-1 face in " + std::to_string(face.facets.size()) + " facets");
            continue;
        }
        const int a = face.facets[0], b = face.facets[1];
        face_edges.emplace(std::min(a, b), std::max(a, b));
        for (auto [w, v] : {std::pair{a, b}, std::pair{b, a}}) {
            ++walls_total[w];
            if (gr.length[v] == gr.length[w] - 1) {
                ++walls[w];
                lower[w].insert(v);
            }
        }
    }
    rep.adjacency = generator_edges == face_edges;
    if (!rep.adjacency) note("facet adjacency differs from shared codimension-1 faces");

    std::vector<int> dist(size, -1);
    std::vector<std::vector<int>> adj(size);
    for (auto [a, b] : face_edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::deque<int> queue{0};
    dist[0] = 0;
    while (!queue.empty()) {
        const int u = queue.front();
        queue.pop_front();
        for (int v : adj[u])
            if (dist[v] < 0) {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
    }
    for (int i = 0; i < size; ++i) {
        const std::string w = format_element(gr.elements[i]);
        if (dist[i] != gr.length[i]) {
            rep.distance_is_length = false;
            note("w=" + w + ": gallery distance " + std::to_string(dist[i]) + " != length " +
                 std::to_string(gr.length[i]));
        }
        if (walls_total[i] != 2 * r) {
            rep.thin = false;
            note("w=" + w + ": " + std::to_string(walls_total[i]) + " codimension-1 faces");
        }
        const int t = t_statistic(gr.elements[i]);
        if (walls[i] != t) {
            rep.wall_count_is_t = false;
            note("w=" + w + ": descending walls " + std::to_string(walls[i]) + " != t " + std::to_string(t));
        }
        if (static_cast<int>(lower[i].size()) != t) {
            ++rep.facet_count_mismatches;
            if (!rep.facet_count_example)
                rep.facet_count_example = "w=" + w + ": " + std::to_string(lower[i].size()) +
                                          " lower adjacent facets, t = " + std::to_string(t);
        }
    }
    return rep;
}

bool ComplexReport::all_passed() const {
    return f_bounds && h_sum && h_identity && euler_zero && h_nonnegative && gallery.adjacency && gallery.thin &&
           gallery.distance_is_length && gallery.wall_count_is_t;
}

ComplexReport analyze_complex(const ProductGroup& g, const ComplexCaps& caps) {
    const FaceComplex c = enumerate_faces(g, caps);
    ComplexReport r;
    r.group = g.name();
    r.order = g.order();
    r.rank = g.rank();
    r.f = f_vector(c);
    const HIdentity id = h_polynomial_identity_check(c);
    r.h = id.h;
    r.tally = id.tally;
    r.h_identity = id.holds;
    r.euler = euler_characteristic(r.f);
    r.euler_zero = r.euler == 0;
    r.f_bounds = r.f.front() == 1 && r.f.back() == r.order;
    r.h_sum = std::accumulate(r.h.begin(), r.h.end(), Integer(0)) == r.order;
    r.h_nonnegative = std::all_of(r.h.begin(), r.h.end(), [](const Integer& x) { return x >= 0; });
    r.h_palindromic = std::equal(r.h.begin(), r.h.end(), r.h.rbegin());
    r.gallery = gallery_checks(c);
    return r;
}

namespace {

Json integers(const std::vector<Integer>& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(x.get_str());
    return a;
}

}  // namespace

Json to_json(const ComplexReport& r) {
    Json checks = {{"f_bounds", r.f_bounds},
                   {"h_sum_is_order", r.h_sum},
                   {"h_polynomial_identity", r.h_identity},
                   {"euler_characteristic_zero", r.euler_zero},
                   {"h_nonnegative", r.h_nonnegative},
                   {"adjacency_is_shared_wall", r.gallery.adjacency},
                   {"thin", r.gallery.thin},
                   {"gallery_distance_is_length", r.gallery.distance_is_length},
                   {"descending_walls_is_t", r.gallery.wall_count_is_t}};
    Json observations = {{"h_palindromic", r.h_palindromic},
                         {"lower_facet_count_mismatches", r.gallery.facet_count_mismatches},
                         {"lower_facet_count_example",
                          r.gallery.facet_count_example ? Json(*r.gallery.facet_count_example) : Json(nullptr)}};
    return Json{{"group", r.group},
                {"order", r.order.get_str()},
                {"rank", r.rank},
                {"f_vector", integers(r.f)},
                {"h_vector", integers(r.h)},
                {"t_tally", integers(r.tally)},
                {"euler_characteristic", r.euler.get_str()},
                {"checks", std::move(checks)},
                {"all_passed", r.all_passed()},
                {"observations", std::move(observations)},
                {"counterexample", r.gallery.counterexample ? Json(*r.gallery.counterexample) : Json(nullptr)}};
}

}  // namespace coxdes
