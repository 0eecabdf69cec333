#include "coxdes/element.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <stdexcept>

namespace coxdes {

namespace {

int mod(int a, int m) {
    const int r = a % m;
    return r < 0 ? r + m : r;
}

int dihedral_length(int m, const Element& w) {
    const int k = w.data[1];
    if (w.data[0] == static_cast<int>(DihedralKind::rotation)) return 2 * std::min(k, m - k);
    if (k == 0) return 1;
    return std::min(2 * k - 1, 2 * (m - k) + 1);
}

void swap_values(std::vector<int>& data, int a, int b) {
    // Swaps |a| and |b| wherever they appear, keeping signs.
    for (int& v : data) {
        const int av = std::abs(v);
        if (av == a)
            v = v > 0 ? b : -b;
        else if (av == b)
            v = v > 0 ? a : -a;
    }
}

}  // namespace

Element identity(const GroupType& g) {
    Element e{g, {}};
    switch (g.family()) {
        case Family::A:
            e.data.resize(g.parameter() + 1);
            for (int i = 0; i <= g.parameter(); ++i) e.data[i] = i + 1;
            break;
        case Family::B:
        case Family::D:
            e.data.resize(g.parameter());
            for (int i = 0; i < g.parameter(); ++i) e.data[i] = i + 1;
            break;
        case Family::I2: e.data = {0, 0}; break;
    }
    return e;
}

ProductElement identity(const ProductGroup& g) {
    ProductElement e;
    e.factors.reserve(g.factors.size());
    for (const auto& f : g.factors) e.factors.push_back(identity(f));
    return e;
}

bool is_valid_element(const GroupType& type, const std::vector<int>& data) {
    const int n = type.parameter();
    if (type.family() == Family::I2) {
        return data.size() == 2 && (data[0] == 0 || data[0] == 1) && data[1] >= 0 && data[1] < n;
    }
    const int size = type.family() == Family::A ? n + 1 : n;
    if (static_cast<int>(data.size()) != size) return false;
    std::vector<bool> seen(size + 1, false);
    int negatives = 0;
    for (int v : data) {
        if (v < 0) {
            if (type.family() == Family::A) return false;
            ++negatives;
        }
        const int av = std::abs(v);
        if (av < 1 || av > size || seen[av]) return false;
        seen[av] = true;
    }
    return type.family() != Family::D || negatives % 2 == 0;
}

Element make_element(const GroupType& type, std::vector<int> data) {
    if (!is_valid_element(type, data))
        throw std::invalid_argument("not an element of " + type.name());
    return Element{type, std::move(data)};
}

Element generator_apply(const Element& w, int s, Side side) {
    Element out = w;
    auto& d = out.data;
    const int n = w.type.parameter();
    switch (w.type.family()) {
        case Family::A:
            if (side == Side::right)
                std::swap(d[s], d[s + 1]);
            else
                swap_values(d, s + 1, s + 2);
            break;
        case Family::B:
            if (s == 0) {
                if (side == Side::right) {
                    d[0] = -d[0];
                } else {
                    for (int& v : d)
                        if (std::abs(v) == 1) v = -v;
                }
            } else if (side == Side::right) {
                std::swap(d[s - 1], d[s]);
            } else {
                swap_values(d, s, s + 1);
            }
            break;
        case Family::D:
            if (s == 0) {
                if (side == Side::right) {
                    std::swap(d[0], d[1]);
                    d[0] = -d[0];
                    d[1] = -d[1];
                } else {
                    swap_values(d, 1, 2);
                    for (int& v : d)
                        if (std::abs(v) <= 2) v = -v;
                }
            } else if (side == Side::right) {
                std::swap(d[s - 1], d[s]);
            } else {
                swap_values(d, s, s + 1);
            }
            break;
        case Family::I2: {
            const int k = d[1];
            if (side == Side::right) {
                if (d[0] == 0) {
                    d = {1, mod(k + s, n)};
                } else {
                    d = {0, mod(k - s, n)};
                }
            } else {
                d = {d[0] == 0 ? 1 : 0, mod(s - k, n)};
            }
            break;
        }
    }
    return out;
}

ProductElement generator_apply(const ProductElement& w, int s, Side side) {
    ProductElement out = w;
    for (auto& f : out.factors) {
        const int r = f.type.rank();
        if (s < r) {
            f = generator_apply(f, s, side);
            return out;
        }
        s -= r;
    }
    throw std::out_of_range("generator index exceeds rank");
}

Element inverse(const Element& w) {
    Element out = w;
    switch (w.type.family()) {
        case Family::A:
            for (std::size_t i = 0; i < w.data.size(); ++i) out.data[w.data[i] - 1] = static_cast<int>(i) + 1;
            break;
        case Family::B:
        case Family::D:
            for (std::size_t i = 0; i < w.data.size(); ++i) {
                const int v = w.data[i];
                out.data[std::abs(v) - 1] = v > 0 ? static_cast<int>(i) + 1 : -static_cast<int>(i) - 1;
            }
            break;
        case Family::I2:
            if (w.data[0] == 0) out.data[1] = mod(-w.data[1], w.type.parameter());
            break;
    }
    return out;
}

ProductElement inverse(const ProductElement& w) {
    ProductElement out;
    out.factors.reserve(w.factors.size());
    for (const auto& f : w.factors) out.factors.push_back(inverse(f));
    return out;
}

std::uint64_t right_descent_mask(const Element& w) {
    const auto& d = w.data;
    std::uint64_t mask = 0;
    switch (w.type.family()) {
        case Family::A:
            for (std::size_t i = 0; i + 1 < d.size(); ++i)
                if (d[i] > d[i + 1]) mask |= std::uint64_t{1} << i;
            break;
        case Family::B:
        case Family::D: {
            // pi(0) := 0 for B and pi(0) := -pi(2) for D.
            const int pi0 = w.type.family() == Family::B ? 0 : -d[1];
            if (pi0 > d[0]) mask |= 1;
            for (std::size_t i = 1; i < d.size(); ++i)
                if (d[i - 1] > d[i]) mask |= std::uint64_t{1} << i;
            break;
        }
        case Family::I2: {
            const int m = w.type.parameter();
            const int len = dihedral_length(m, w);
            for (int s = 0; s < 2; ++s)
                if (dihedral_length(m, generator_apply(w, s, Side::right)) < len)
                    mask |= std::uint64_t{1} << s;
            break;
        }
    }
    return mask;
}

std::uint64_t left_descent_mask(const Element& w) { return right_descent_mask(inverse(w)); }

std::uint64_t right_descent_mask(const ProductElement& w) {
    std::uint64_t mask = 0;
    int offset = 0;
    for (const auto& f : w.factors) {
        mask |= right_descent_mask(f) << offset;
        offset += f.type.rank();
    }
    return mask;
}

std::uint64_t left_descent_mask(const ProductElement& w) { return right_descent_mask(inverse(w)); }

int des(const Element& w) {
    if (w.type.family() == Family::I2) {
        if (w == identity(w.type)) return 0;
        if (w == longest_element(w.type)) return 2;
        return 1;
    }
    return std::popcount(right_descent_mask(w));
}

int ides(const Element& w) { return des(inverse(w)); }

int t_statistic(const Element& w) { return des(w) + ides(w); }

int des(const ProductElement& w) {
    int total = 0;
    for (const auto& f : w.factors) total += des(f);
    return total;
}

int ides(const ProductElement& w) {
    int total = 0;
    for (const auto& f : w.factors) total += ides(f);
    return total;
}

int t_statistic(const ProductElement& w) {
    int total = 0;
    for (const auto& f : w.factors) total += t_statistic(f);
    return total;
}

Element longest_element(const GroupType& g) {
    Element w = identity(g);
    const int n = g.parameter();
    switch (g.family()) {
        case Family::A: std::reverse(w.data.begin(), w.data.end()); break;
        case Family::B:
            for (int& v : w.data) v = -v;
            break;
        case Family::D:
            for (int& v : w.data) v = -v;
            if (n % 2 == 1) w.data[0] = 1;
            break;
        case Family::I2:
            w.data = n % 2 == 0 ? std::vector<int>{0, n / 2} : std::vector<int>{1, (n + 1) / 2};
            break;
    }
    return w;
}

Element multiply(const Element& u, const Element& v) {
    Element out = u;
    const int m = u.type.parameter();
    switch (u.type.family()) {
        case Family::A:
            for (std::size_t i = 0; i < v.data.size(); ++i) out.data[i] = u.data[v.data[i] - 1];
            break;
        case Family::B:
        case Family::D:
            for (std::size_t i = 0; i < v.data.size(); ++i) {
                const int x = v.data[i];
                const int ux = u.data[std::abs(x) - 1];
                out.data[i] = x > 0 ? ux : -ux;
            }
            break;
        case Family::I2: {
            const int a = u.data[1], b = v.data[1];
            const bool ur = u.data[0] == 1, vr = v.data[0] == 1;
            // r^a s^e * r^b s^f = r^(a + (-1)^e b) s^(e+f)
            out.data = {(ur != vr) ? 1 : 0, mod(ur ? a - b : a + b, m)};
            break;
        }
    }
    return out;
}

std::vector<int> element_key(const ProductElement& w) {
    std::vector<int> key;
    for (const auto& f : w.factors) key.insert(key.end(), f.data.begin(), f.data.end());
    return key;
}

std::string format_element(const Element& w) {
    if (w.type.is_dihedral()) {
        std::string s = "r^" + std::to_string(w.data[1]);
        return w.data[0] == static_cast<int>(DihedralKind::reflection) ? s + " s" : s;
    }
    std::string s = "[";
    for (std::size_t i = 0; i < w.data.size(); ++i) s += (i ? "," : "") + std::to_string(w.data[i]);
    return s + "]";
}

std::string format_element(const ProductElement& w) {
    std::string s;
    for (const auto& f : w.factors) s += (s.empty() ? "" : " x ") + format_element(f);
    return s;
}

}  // namespace coxdes
