#pragma once

#include "coxdes/expression.hpp"
#include "coxdes/group.hpp"
#include "coxdes/io.hpp"

#include <optional>
#include <string>
#include <vector>

namespace coxdes {

struct IndexRange {
    std::string var;
    Expression from;
    Expression to;
};

/// One factor pattern: family(rank)^multiplicity, optionally repeated over
/// var = from..to (inclusive).
struct SequenceTerm {
    Family family;
    Expression rank;
    Expression multiplicity;
    std::optional<IndexRange> index;
};

/// A map n -> ProductGroup.
struct SequenceSpec {
    std::vector<SequenceTerm> terms;
};

/// {"terms":[{"family":"A|B|D|I2","rank":"<expr>","multiplicity":"<expr>",
///            "index":{"var":"i","from":"<expr>","to":"<expr>"}?}]}
/// Throws ParseError on schema or expression errors.
SequenceSpec parse_sequence_spec(const Json& doc);
SequenceSpec parse_sequence_spec_text(std::string_view text);
Json to_json(const SequenceSpec& spec);

struct Instantiation {
    ProductGroup group;
    std::vector<std::string> log;  // index adjustments and skipped terms
};

inline constexpr std::size_t default_factor_cap = 1'000'000;

/// Evaluates every expression at n (ceil rounding) and expands multiplicities.
/// For an indexed dihedral term, leading indices whose parameter is below 3
/// are skipped and logged. Any other invalid parameter throws RangeError.
Instantiation instantiate(const SequenceSpec& spec, int n, std::size_t factor_cap = default_factor_cap);

}  // namespace coxdes
