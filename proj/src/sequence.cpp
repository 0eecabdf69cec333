#include "coxdes/sequence.hpp"

#include "coxdes/errors.hpp"

#include <cctype>

namespace coxdes {

namespace {

const std::string& required_string(const Json& obj, const char* key, std::size_t term) {
    if (!obj.contains(key) || !obj[key].is_string())
        throw ParseError(std::string("term ") + std::to_string(term) + ": missing string field '" + key + "'",
                         0);
    return obj[key].get_ref<const std::string&>();
}

Expression parse_field(const Json& obj, const char* key, std::size_t term, const std::vector<std::string>& vars) {
    const std::string& text = required_string(obj, key, term);
    try {
        return Expression::parse(text, vars);
    } catch (const ParseError& e) {
        throw ParseError(std::string("term ") + std::to_string(term) + " field '" + key + "': " + e.what(),
                         e.position());
    }
}

void reject_unknown_keys(const Json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || it.key() == a;
        if (!ok) throw ParseError(where + ": unknown field '" + it.key() + "'", 0);
    }
}

}  // namespace

SequenceSpec parse_sequence_spec(const Json& doc) {
    if (!doc.is_object() || !doc.contains("terms") || !doc["terms"].is_array())
        throw ParseError("sequence spec must be an object with a 'terms' array", 0);
    reject_unknown_keys(doc, {"terms", "name", "description"}, "spec");
    SequenceSpec spec;
    std::size_t index = 0;
    for (const auto& t : doc["terms"]) {
        if (!t.is_object()) throw ParseError("term " + std::to_string(index) + " is not an object", 0);
        reject_unknown_keys(t, {"family", "rank", "multiplicity", "index"}, "term " + std::to_string(index));
        Family family;
        try {
            family = parse_family(required_string(t, "family", index));
        } catch (const ParseError&) {
            throw;
        } catch (const std::exception& e) {
            throw ParseError("term " + std::to_string(index) + ": " + e.what(), 0);
        }
        std::vector<std::string> vars{"n"};
        std::optional<IndexRange> range;
        if (t.contains("index")) {
            const Json& ix = t["index"];
            if (!ix.is_object()) throw ParseError("term " + std::to_string(index) + ": 'index' must be an object", 0);
            reject_unknown_keys(ix, {"var", "from", "to"}, "term " + std::to_string(index) + " index");
            const std::string& var = required_string(ix, "var", index);
            if (var.empty() || var == "n" || !std::isalpha(static_cast<unsigned char>(var[0])))
                throw ParseError("term " + std::to_string(index) + ": invalid index variable '" + var + "'", 0);
            range = IndexRange{var, parse_field(ix, "from", index, vars), parse_field(ix, "to", index, vars)};
            vars.push_back(var);
        }
        SequenceTerm term{family, parse_field(t, "rank", index, vars),
                          t.contains("multiplicity") ? parse_field(t, "multiplicity", index, vars)
                                                     : Expression::parse("1", vars),
                          std::move(range)};
        spec.terms.push_back(std::move(term));
        ++index;
    }
    if (spec.terms.empty()) throw ParseError("sequence spec has no terms", 0);
    return spec;
}

SequenceSpec parse_sequence_spec_text(std::string_view text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what(), e.byte);
    }
    return parse_sequence_spec(doc);
}

Json to_json(const SequenceSpec& spec) {
    Json terms = Json::array();
    for (const auto& t : spec.terms) {
        Json j;
        j["family"] = std::string(family_name(t.family));
        j["rank"] = t.rank.text();
        j["multiplicity"] = t.multiplicity.text();
        if (t.index) j["index"] = {{"var", t.index->var}, {"from", t.index->from.text()}, {"to", t.index->to.text()}};
        terms.push_back(std::move(j));
    }
    return Json{{"terms", terms}};
}

Instantiation instantiate(const SequenceSpec& spec, int n, std::size_t factor_cap) {
    if (n < 1) throw RangeError("n must be >= 1");
    Instantiation out;
    std::size_t term_index = 0;
    const auto add = [&](const SequenceTerm& t, const Bindings& b, const std::string& where, bool skippable) {
        const Integer rank = t.rank.evaluate_ceil(b);
        const Integer mult = t.multiplicity.evaluate_ceil(b);
        if (mult < 0) throw RangeError(where + ": negative multiplicity " + mult.get_str());
        if (!rank.fits_sint_p() || !is_valid_parameter(t.family, static_cast<int>(rank.get_si()))) {
            if (skippable) return false;
            if (!rank.fits_sint_p()) throw RangeError(where + ": parameter " + rank.get_str() + " out of range");
            try {
                (void)GroupType(t.family, static_cast<int>(rank.get_si()));
            } catch (const RangeError& e) {
                throw RangeError(where + ": " + e.what());
            }
        }
        if (mult == 0) return true;
        if (out.group.factors.size() + mult.get_ui() > factor_cap)
            throw CapExceeded("instantiation exceeds " + std::to_string(factor_cap) + " factors");
        const GroupType g(t.family, static_cast<int>(rank.get_si()));
        out.group.factors.insert(out.group.factors.end(), mult.get_ui(), g);
        return true;
    };
    for (const auto& t : spec.terms) {
        const std::string where = "term " + std::to_string(term_index) + " at n=" + std::to_string(n);
        Bindings b{{"n", Integer(n)}};
        if (!t.index) {
            add(t, b, where, false);
        } else {
            const Integer from = t.index->from.evaluate_ceil(b);
            const Integer to = t.index->to.evaluate_ceil(b);
            if (to - from > Integer(static_cast<unsigned long>(factor_cap)))
                throw CapExceeded(where + ": index range too long");
            bool leading = t.family == Family::I2;
            std::vector<std::string> skipped;
            for (Integer i = from; i <= to; ++i) {
                b[t.index->var] = i;
                const std::string here = where + ", " + t.index->var + "=" + i.get_str();
                if (add(t, b, here, leading)) {
                    leading = false;
                } else {
                    skipped.push_back(i.get_str());
                }
            }
            if (!skipped.empty()) {
                std::string list;
                for (const auto& s : skipped) list += (list.empty() ? "" : ",") + s;
                out.log.push_back(where + ": skipped " + t.index->var + " in {" + list +
                                  "} (I2 needs m >= 3); range starts at " + t.index->var + "=" +
                                  Integer(from + static_cast<long>(skipped.size())).get_str());
            }
        }
        ++term_index;
    }
    if (out.group.empty()) throw RangeError("instantiation at n=" + std::to_string(n) + " is the trivial group");
    return out;
}

}  // namespace coxdes
