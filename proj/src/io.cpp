#include "coxdes/io.hpp"

#include "coxdes/errors.hpp"

namespace coxdes {

Json to_json(const JointPMF& p) {
    Json counts = Json::array();
    for (int i = 0; i <= p.n(); ++i) {
        Json row = Json::array();
        for (int j = 0; j <= p.n(); ++j) row.push_back(p.counts.at(i, j).get_str());
        counts.push_back(std::move(row));
    }
    Json doc;
    doc["n"] = p.n();
    doc["denominator"] = p.denominator.get_str();
    doc["counts"] = std::move(counts);
    return doc;
}

JointPMF joint_pmf_from_json(const Json& doc) {
    const int n = doc.at("n").get<int>();
    JointPMF p{JointCountMatrix(n), Integer(doc.at("denominator").get<std::string>()), true};
    const auto& rows = doc.at("counts");
    if (rows.size() != static_cast<std::size_t>(n + 1))
        throw ParseError("count matrix has wrong number of rows", 0);
    for (int i = 0; i <= n; ++i) {
        if (rows[i].size() != static_cast<std::size_t>(n + 1))
            throw ParseError("count matrix row has wrong length", 0);
        for (int j = 0; j <= n; ++j) p.counts.at(i, j) = Integer(rows[i][j].get<std::string>());
    }
    if (p.counts.total() != p.denominator)
        throw ParseError("counts do not sum to the denominator", 0);
    if (doc.contains("exact")) p.exact = doc.at("exact").get<bool>();
    return p;
}

Json to_json(const IntegerPMF& p) {
    Integer den = 1;
    for (const auto& q : p.probabilities) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
    Json counts = Json::array();
    for (const auto& q : p.probabilities) {
        Integer num = q.get_num() * (den / q.get_den());
        counts.push_back(num.get_str());
    }
    Json doc;
    doc["offset"] = p.offset;
    doc["denominator"] = den.get_str();
    doc["counts"] = std::move(counts);
    return doc;
}

IntegerPMF integer_pmf_from_json(const Json& doc) {
    IntegerPMF p;
    p.offset = doc.at("offset").get<int>();
    const Integer den(doc.at("denominator").get<std::string>());
    for (const auto& c : doc.at("counts"))
        p.probabilities.push_back(make_rational(Integer(c.get<std::string>()), den));
    return p;
}

std::string joint_cache_filename(const GroupType& g) {
    return std::string(family_name(g.family())) + "-" + std::to_string(g.parameter()) + "-v" +
           COXDES_VERSION + ".json";
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace coxdes
