#include "coxdes/group.hpp"

#include "coxdes/errors.hpp"

#include <cctype>
#include <limits>
#include <optional>

namespace coxdes {

std::string_view family_name(Family f) {
    switch (f) {
        case Family::A: return "A";
        case Family::B: return "B";
        case Family::D: return "D";
        case Family::I2: return "I2";
    }
    return "?";
}

Family parse_family(std::string_view name) {
    if (name == "A") return Family::A;
    if (name == "B") return Family::B;
    if (name == "D") return Family::D;
    if (name == "I2") return Family::I2;
    throw ParseError("unknown family '" + std::string(name) + "'", 0);
}

bool is_valid_parameter(Family family, int parameter) noexcept {
    switch (family) {
        case Family::A: return parameter >= 1;
        case Family::B: return parameter >= 2;
        case Family::D: return parameter >= 4;
        case Family::I2: return parameter >= 3;
    }
    return false;
}

GroupType::GroupType(Family family, int parameter) : family_(family), parameter_(parameter) {
    if (!is_valid_parameter(family, parameter)) {
        std::string rule;
        switch (family) {
            case Family::A: rule = "A requires n >= 1"; break;
            case Family::B: rule = "B requires n >= 2"; break;
            case Family::D: rule = "D requires n >= 4"; break;
            case Family::I2: rule = "I2 requires m >= 3"; break;
        }
        throw RangeError(std::string(family_name(family)) + ":" + std::to_string(parameter) +
                         ": " + rule);
    }
}

Integer GroupType::order() const {
    const auto n = static_cast<unsigned>(parameter_);
    switch (family_) {
        case Family::A: return factorial(n + 1);
        case Family::B: return power_of_two(n) * factorial(n);
        case Family::D: return power_of_two(n - 1) * factorial(n);
        case Family::I2: return Integer(2 * parameter_);
    }
    return 0;
}

std::string GroupType::name() const {
    return std::string(family_name(family_)) + ":" + std::to_string(parameter_);
}

int ProductGroup::rank() const noexcept {
    int r = 0;
    for (const auto& f : factors) r += f.rank();
    return r;
}

Integer ProductGroup::order() const {
    Integer o = 1;
    for (const auto& f : factors) o *= f.order();
    return o;
}

std::string ProductGroup::name() const {
    std::string out;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (i) out += " x ";
        out += factors[i].name();
    }
    return out;
}

ProductGroup operator*(ProductGroup lhs, const ProductGroup& rhs) {
    lhs.factors.insert(lhs.factors.end(), rhs.factors.begin(), rhs.factors.end());
    return lhs;
}

namespace {

class GroupSpecParser {
public:
    explicit GroupSpecParser(std::string_view text) : text_(text) {}

    ProductGroup parse() {
        ProductGroup g;
        skip_ws();
        if (at_end()) throw ParseError("empty group", pos_);
        parse_term(g);
        skip_ws();
        while (!at_end()) {
            if (text_[pos_] != 'x') throw ParseError("expected 'x'", pos_);
            ++pos_;
            parse_term(g);
            skip_ws();
        }
        return g;
    }

private:
    void parse_term(ProductGroup& g) {
        skip_ws();
        const std::size_t atom_start = pos_;
        Family family;
        if (at_end()) throw ParseError("expected group atom", pos_);
        switch (text_[pos_]) {
            case 'A': family = Family::A; ++pos_; break;
            case 'B': family = Family::B; ++pos_; break;
            case 'D': family = Family::D; ++pos_; break;
            case 'I':
                ++pos_;
                skip_ws();
                if (at_end() || text_[pos_] != '2') throw ParseError("expected 'I2'", pos_);
                ++pos_;
                family = Family::I2;
                break;
            default: throw ParseError("expected one of A, B, D, I2", pos_);
        }
        skip_ws();
        if (at_end() || text_[pos_] != ':') throw ParseError("expected ':'", pos_);
        ++pos_;
        const long parameter = parse_uint();
        std::size_t atom_end = pos_;
        long power = 1;
        skip_ws();
        if (!at_end() && text_[pos_] == '^') {
            ++pos_;
            power = parse_uint();
        }
        if (power == 0) throw ParseError("exponent must be positive", pos_ - 1);
        const std::string atom(text_.substr(atom_start, atom_end - atom_start));
        std::optional<GroupType> type;
        try {
            type.emplace(family, static_cast<int>(parameter));
        } catch (const RangeError& e) {
            throw RangeError(std::string("invalid atom ") + e.what());
        }
        for (long i = 0; i < power; ++i) g.factors.push_back(*type);
    }

    long parse_uint() {
        skip_ws();
        const std::size_t start = pos_;
        long value = 0;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            value = value * 10 + (text_[pos_] - '0');
            if (value > std::numeric_limits<int>::max())
                throw ParseError("integer too large", start);
            ++pos_;
        }
        if (pos_ == start) throw ParseError("expected unsigned integer", pos_);
        return value;
    }

    void skip_ws() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    bool at_end() const { return pos_ >= text_.size(); }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

ProductGroup parse_group_spec(std::string_view text) { return GroupSpecParser(text).parse(); }

CoxeterMatrix coxeter_matrix(const GroupType& g) {
    const int r = g.rank();
    CoxeterMatrix m(r, std::vector<int>(r, 2));
    for (int i = 0; i < r; ++i) m[i][i] = 1;
    auto link = [&](int a, int b, int order) { m[a][b] = m[b][a] = order; };
    switch (g.family()) {
        case Family::A:
            for (int i = 0; i + 1 < r; ++i) link(i, i + 1, 3);
            break;
        case Family::B:
            link(0, 1, 4);
            for (int i = 1; i + 1 < r; ++i) link(i, i + 1, 3);
            break;
        case Family::D:
            // s0 attaches to s2; s1 - s2 - ... - s_{n-1} is a path.
            link(0, 2, 3);
            for (int i = 1; i + 1 < r; ++i) link(i, i + 1, 3);
            break;
        case Family::I2:
            link(0, 1, g.parameter());
            break;
    }
    return m;
}

CoxeterMatrix coxeter_matrix(const ProductGroup& g) {
    const int r = g.rank();
    CoxeterMatrix m(r, std::vector<int>(r, 2));
    int offset = 0;
    for (const auto& f : g.factors) {
        auto block = coxeter_matrix(f);
        for (int i = 0; i < f.rank(); ++i)
            for (int j = 0; j < f.rank(); ++j) m[offset + i][offset + j] = block[i][j];
        offset += f.rank();
    }
    return m;
}

bool is_valid_coxeter_matrix(const CoxeterMatrix& m) {
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i].size() != m.size() || m[i][i] != 1) return false;
        for (std::size_t j = 0; j < m.size(); ++j)
            if (i != j && (m[i][j] < 2 || m[i][j] != m[j][i])) return false;
    }
    return true;
}

}  // namespace coxdes
