#include "coxdes/enumerate.hpp"

#include "coxdes/errors.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <numeric>
#include <stdexcept>

namespace coxdes {

void check_cap(const ProductGroup& g, std::uint64_t cap) {
    const Integer order = g.order();
    if (order > Integer(std::to_string(cap)))
        throw CapExceeded("group " + g.name() + " has order " + order.get_str() +
                          " which exceeds the enumeration cap " + std::to_string(cap));
}

void for_each_element(const GroupType& g, const std::function<void(const Element&)>& visit,
                      std::uint64_t cap) {
    check_cap(ProductGroup{{g}}, cap);
    const int n = g.parameter();
    switch (g.family()) {
        case Family::A: {
            Element w = identity(g);
            do {
                visit(w);
            } while (std::next_permutation(w.data.begin(), w.data.end()));
            break;
        }
        case Family::B:
        case Family::D: {
            const bool even_only = g.family() == Family::D;
            std::vector<int> perm(n);
            std::iota(perm.begin(), perm.end(), 1);
            Element w{g, std::vector<int>(n)};
            do {
                for (std::uint64_t signs = 0; signs < (std::uint64_t{1} << n); ++signs) {
                    if (even_only && std::popcount(signs) % 2 != 0) continue;
                    for (int i = 0; i < n; ++i) w.data[i] = (signs >> i) & 1 ? -perm[i] : perm[i];
                    visit(w);
                }
            } while (std::next_permutation(perm.begin(), perm.end()));
            break;
        }
        case Family::I2:
            for (int kind = 0; kind < 2; ++kind)
                for (int k = 0; k < n; ++k) visit(Element{g, {kind, k}});
            break;
    }
}

void for_each_element(const ProductGroup& g,
                      const std::function<void(const ProductElement&)>& visit,
                      std::uint64_t cap) {
    check_cap(g, cap);
    std::vector<std::vector<Element>> lists;
    lists.reserve(g.factors.size());
    for (const auto& f : g.factors) lists.push_back(enumerate(f, cap));
    ProductElement w = identity(g);
    std::vector<std::size_t> digits(lists.size(), 0);
    for (std::size_t i = 0; i < lists.size(); ++i) w.factors[i] = lists[i][0];
    while (true) {
        visit(w);
        std::size_t i = 0;
        for (; i < lists.size(); ++i) {
            if (++digits[i] < lists[i].size()) {
                w.factors[i] = lists[i][digits[i]];
                break;
            }
            digits[i] = 0;
            w.factors[i] = lists[i][0];
        }
        if (i == lists.size()) break;
    }
}

std::vector<Element> enumerate(const GroupType& g, std::uint64_t cap) {
    std::vector<Element> out;
    for_each_element(g, [&](const Element& w) { out.push_back(w); }, cap);
    return out;
}

std::vector<ProductElement> enumerate(const ProductGroup& g, std::uint64_t cap) {
    std::vector<ProductElement> out;
    for_each_element(g, [&](const ProductElement& w) { out.push_back(w); }, cap);
    return out;
}

std::size_t KeyHash::operator()(const std::vector<int>& key) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (int v : key) {
        h ^= static_cast<std::size_t>(static_cast<unsigned>(v));
        h *= 0x100000001b3ULL;
    }
    return h;
}

int CayleyGraph::index_of(const ProductElement& w) const {
    auto it = index.find(element_key(w));
    if (it == index.end()) throw std::out_of_range("element not in Cayley graph");
    return it->second;
}

CayleyGraph build_cayley_graph(const ProductGroup& g, std::uint64_t cap) {
    check_cap(g, cap);
    CayleyGraph graph;
    graph.group = g;
    const int r = g.rank();
    graph.right.assign(r, {});
    graph.left.assign(r, {});

    graph.elements.push_back(identity(g));
    graph.length.push_back(0);
    graph.index.emplace(element_key(graph.elements[0]), 0);
    for (std::size_t head = 0; head < graph.elements.size(); ++head) {
        for (int s = 0; s < r; ++s) {
            ProductElement next = generator_apply(graph.elements[head], s, Side::right);
            auto key = element_key(next);
            auto [it, inserted] = graph.index.emplace(std::move(key), graph.size());
            if (inserted) {
                if (static_cast<std::uint64_t>(graph.elements.size()) >= cap)
                    throw CapExceeded("Cayley graph search exceeded cap");
                graph.elements.push_back(std::move(next));
                graph.length.push_back(graph.length[head] + 1);
            }
            graph.right[s].push_back(it->second);
        }
    }
    for (int s = 0; s < r; ++s) {
        graph.left[s].resize(graph.elements.size());
        for (int i = 0; i < graph.size(); ++i)
            graph.left[s][i] = graph.index_of(generator_apply(graph.elements[i], s, Side::left));
    }
    return graph;
}

LengthOracle bfs_length_oracle(const ProductGroup& g, std::uint64_t cap) {
    if (g.rank() > 64) throw CapExceeded("length oracle supports rank <= 64");
    LengthOracle oracle{build_cayley_graph(g, cap), {}, {}};
    const auto& graph = oracle.graph;
    oracle.right_descents.assign(graph.size(), 0);
    oracle.left_descents.assign(graph.size(), 0);
    for (int i = 0; i < graph.size(); ++i) {
        for (int s = 0; s < g.rank(); ++s) {
            if (graph.length[graph.right[s][i]] < graph.length[i])
                oracle.right_descents[i] |= std::uint64_t{1} << s;
            if (graph.length[graph.left[s][i]] < graph.length[i])
                oracle.left_descents[i] |= std::uint64_t{1} << s;
        }
    }
    return oracle;
}

}  // namespace coxdes
