#pragma once

#include "coxdes/numeric.hpp"

#include <compare>
#include <string>
#include <string_view>
#include <vector>

namespace coxdes {

enum class Family { A, B, D, I2 };

std::string_view family_name(Family f);
Family parse_family(std::string_view name);

/// One irreducible finite Coxeter group: A(n), B(n), D(n) or I2(m).
/// `parameter` is the rank for A/B/D and the dihedral order parameter m for I2.
class GroupType {
public:
    /// Throws RangeError unless A: n>=1, B: n>=2, D: n>=4, I2: m>=3.
    GroupType(Family family, int parameter);

    Family family() const noexcept { return family_; }
    int parameter() const noexcept { return parameter_; }
    int rank() const noexcept { return family_ == Family::I2 ? 2 : parameter_; }
    Integer order() const;
    bool is_dihedral() const noexcept { return family_ == Family::I2; }

    /// "A:3", "I2:5"; the atom syntax of the group grammar.
    std::string name() const;

    auto operator<=>(const GroupType&) const = default;

private:
    Family family_;
    int parameter_;
};

bool is_valid_parameter(Family family, int parameter) noexcept;

/// Ordered list of irreducible factors W = W_1 x ... x W_k.
struct ProductGroup {
    std::vector<GroupType> factors;

    int rank() const noexcept;
    Integer order() const;
    bool empty() const noexcept { return factors.empty(); }
    std::string name() const;

    bool operator==(const ProductGroup&) const = default;
};

ProductGroup operator*(ProductGroup lhs, const ProductGroup& rhs);

/// Parses `product := term ("x" term)*`, `term := atom ("^" uint)?`,
/// `atom := ("A"|"B"|"D") ":" uint | "I2:" uint`. Whitespace is ignored.
/// Throws ParseError (with byte offset) or RangeError (naming the atom).
ProductGroup parse_group_spec(std::string_view text);

/// Coxeter matrix m(s,s') on the simple reflections, in generator-index order.
using CoxeterMatrix = std::vector<std::vector<int>>;

CoxeterMatrix coxeter_matrix(const GroupType& g);
CoxeterMatrix coxeter_matrix(const ProductGroup& g);
bool is_valid_coxeter_matrix(const CoxeterMatrix& m);

}  // namespace coxdes
