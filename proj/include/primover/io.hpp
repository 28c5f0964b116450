#ifndef PRIMOVER_IO_HPP
#define PRIMOVER_IO_HPP

#include <nlohmann/json.hpp>

#include <sstream>
#include <string>

#include "primover/cyclotomic.hpp"

namespace primover {

using Json = nlohmann::ordered_json;

namespace detail {

inline Json optional_natural(const std::optional<Natural>& v) {
    return v ? Json(v->get_str()) : Json(nullptr);
}

inline Natural natural_field(const Json& j, const char* key) {
    const auto s = parse_natural(j.at(key).get<std::string>());
    if (!s) throw DomainError(std::string("json: field ") + key + " is not a decimal natural");
    return *s;
}

inline Natural natural_value(const Json& j) {
    const auto s = parse_natural(j.get<std::string>());
    if (!s) throw DomainError("json: expected a decimal natural, got " + j.dump());
    return *s;
}

inline PrimalityVerdict parse_primality(const std::string& s) {
    using Kind = PrimalityVerdict::Kind;
    if (s == "prime") return {Kind::Prime, 0};
    if (s == "composite") return {Kind::Composite, 0};
    const std::string prefix = "probable-prime(";
    if (s.rfind(prefix, 0) == 0 && s.back() == ')')
        return {Kind::ProbablePrime,
                static_cast<unsigned>(std::stoul(s.substr(prefix.size(), s.size() - prefix.size() - 1)))};
    throw DomainError("json: unknown primality " + s);
}

inline std::string factor_string(std::span<const PrimePower> fs) {
    std::string out;
    for (const auto& pp : fs) {
        if (!out.empty()) out += '*';
        out += pp.prime.get_str();
        if (pp.exponent > 1) out += '^' + std::to_string(pp.exponent);
    }
    return out;
}

} // namespace detail

/// Report layout: n, base, verdicts (fermat, strong, super, over, primover),
/// order, coset_count, factors as [prime, exponent] string pairs, wieferich,
/// then prime/primality/prime_orders/complete/notes. Big integers are
/// decimal strings.
inline Json to_json(const ClassificationReport& r) {
    Json j;
    j["n"] = r.n.get_str();
    j["base"] = r.base.get_str();
    j["verdicts"] = {{"fermat", r.is_fermat_psp},
                     {"strong", r.is_strong_psp},
                     {"super", r.is_super_psp},
                     {"over", r.is_overpseudoprime},
                     {"primover", r.is_primover}};
    j["order"] = detail::optional_natural(r.order);
    j["coset_count"] = detail::optional_natural(r.coset_count);
    j["factors"] = Json::array();
    for (const auto& pp : r.factors) j["factors"].push_back({pp.prime.get_str(), std::to_string(pp.exponent)});
    j["wieferich"] = Json::array();
    for (const auto& w : r.wieferich)
        j["wieferich"].push_back({{"prime", w.prime.get_str()}, {"order", w.order}, {"exact", w.exact}});
    j["prime"] = r.is_prime;
    j["primality"] = to_string(r.primality);
    j["prime_orders"] = Json::array();
    for (const auto& [p, k] : r.prime_orders) j["prime_orders"].push_back({p.get_str(), k.get_str()});
    j["complete"] = r.complete;
    j["notes"] = r.notes;
    return j;
}

inline ClassificationReport report_from_json(const Json& j) {
    ClassificationReport r;
    r.n = detail::natural_field(j, "n");
    r.base = detail::natural_field(j, "base");
    const Json& v = j.at("verdicts");
    r.is_fermat_psp = v.at("fermat").get<bool>();
    r.is_strong_psp = v.at("strong").get<bool>();
    r.is_super_psp = v.at("super").get<bool>();
    r.is_overpseudoprime = v.at("over").get<bool>();
    r.is_primover = v.at("primover").get<bool>();
    if (!j.at("order").is_null()) r.order = detail::natural_field(j, "order");
    if (!j.at("coset_count").is_null()) r.coset_count = detail::natural_field(j, "coset_count");
    for (const Json& f : j.at("factors"))
        r.factors.push_back({detail::natural_value(f.at(0)),
                             static_cast<unsigned>(std::stoul(f.at(1).get<std::string>()))});
    for (const Json& w : j.at("wieferich"))
        r.wieferich.push_back({detail::natural_field(w, "prime"), w.at("order").get<unsigned>(),
                               w.at("exact").get<bool>()});
    r.is_prime = j.at("prime").get<bool>();
    r.primality = detail::parse_primality(j.at("primality").get<std::string>());
    for (const Json& po : j.at("prime_orders"))
        r.prime_orders.emplace_back(detail::natural_value(po.at(0)), detail::natural_value(po.at(1)));
    r.complete = j.at("complete").get<bool>();
    r.notes = j.at("notes").get<std::vector<std::string>>();
    return r;
}

inline std::string csv_header() {
    return "n,base,prime,fermat,strong,super,over,primover,order,coset_count,factors,complete";
}

inline std::string to_csv_row(const ClassificationReport& r) {
    auto b = [](bool v) { return v ? "true" : "false"; };
    std::ostringstream os;
    os << r.n.get_str() << ',' << r.base.get_str() << ',' << b(r.is_prime) << ',' << b(r.is_fermat_psp) << ','
       << b(r.is_strong_psp) << ',' << b(r.is_super_psp) << ',' << b(r.is_overpseudoprime) << ','
       << b(r.is_primover) << ',' << (r.order ? r.order->get_str() : "") << ','
       << (r.coset_count ? r.coset_count->get_str() : "") << ',' << detail::factor_string(r.factors) << ','
       << b(r.complete);
    return os.str();
}

inline std::string to_text(const ClassificationReport& r) {
    auto b = [](bool v) { return v ? "true" : "false"; };
    std::ostringstream os;
    os << "n = " << r.n.get_str() << " = " << detail::factor_string(r.factors) << '\n'
       << "base = " << r.base.get_str() << '\n'
       << "primality: " << to_string(r.primality) << '\n'
       << "fermat=" << b(r.is_fermat_psp) << " strong=" << b(r.is_strong_psp) << " super=" << b(r.is_super_psp)
       << " over=" << b(r.is_overpseudoprime) << " primover=" << b(r.is_primover) << '\n';
    if (r.order) os << "order: " << r.order->get_str() << '\n';
    if (r.coset_count) os << "cosets: " << r.coset_count->get_str() << '\n';
    for (const auto& [p, k] : r.prime_orders) os << "order mod " << p.get_str() << ": " << k.get_str() << '\n';
    for (const auto& w : r.wieferich)
        os << "wieferich " << w.prime.get_str() << ": w " << (w.exact ? "= " : ">= ") << w.order << '\n';
    if (!r.complete) os << "incomplete\n";
    for (const auto& note : r.notes) os << "note: " << note << '\n';
    return os.str();
}

inline Json to_json(const PrimoverVerdict& v) {
    Json j;
    j["primality"] = to_string(v.primality);
    j["overpseudoprime"] = v.overpseudoprime;
    j["primover"] = v.primover;
    j["determined"] = v.determined;
    if (v.factorization) {
        j["factors"] = Json::array();
        for (const auto& pp : v.factorization->factors())
            j["factors"].push_back({pp.prime.get_str(), std::to_string(pp.exponent)});
    } else {
        j["factors"] = nullptr;
    }
    return j;
}

inline Json to_json(const FamilyNumber& f) {
    Json j;
    j["family"] = to_string(f.family);
    j["parameters"] = Json::object();
    for (const auto& [k, v] : f.parameters) j["parameters"][k] = v;
    j["index"] = f.index;
    j["value"] = f.value.get_str();
    j["verdict"] = to_json(f.value_verdict);
    j["divided_by"] = f.divided_by.get_str();
    j["reduced"] = f.reduced.get_str();
    j["reduced_verdict"] = to_json(f.reduced_verdict);
    j["divisor_differences"] = f.divisor_differences ? Json(*f.divisor_differences) : Json(nullptr);
    return j;
}

inline std::string verdict_word(const PrimoverVerdict& v) {
    if (!v.determined) return "undetermined";
    if (v.primality.prime()) return v.primality.certain() ? "prime" : "probable prime";
    return v.overpseudoprime ? "overpseudoprime" : "not primover";
}

inline std::string to_text(const FamilyNumber& f) {
    std::ostringstream os;
    os << to_string(f.family);
    for (const auto& [k, v] : f.parameters) os << ' ' << k << '=' << v;
    os << '\n' << "value = " << f.value.get_str() << '\n';
    if (f.value_verdict.factorization)
        os << "factors = " << detail::factor_string(f.value_verdict.factorization->factors()) << '\n';
    os << "verdict: " << verdict_word(f.value_verdict) << '\n';
    if (f.divided_by != 1) {
        os << "reduced = value / " << f.divided_by.get_str() << " = " << f.reduced.get_str() << '\n'
           << "reduced verdict: " << verdict_word(f.reduced_verdict) << '\n';
    }
    if (f.divisor_differences)
        os << "divisors all 1 mod p: " << (*f.divisor_differences ? "true" : "false") << '\n';
    return os.str();
}

inline std::string to_csv(const FamilyNumber& f) {
    std::ostringstream os;
    os << "family,index,value,verdict,divided_by,reduced,reduced_verdict\n"
       << to_string(f.family) << ',' << f.index << ',' << f.value.get_str() << ',' << verdict_word(f.value_verdict)
       << ',' << f.divided_by.get_str() << ',' << f.reduced.get_str() << ',' << verdict_word(f.reduced_verdict)
       << '\n';
    return os.str();
}

inline Json to_json(const CosetPartition& p) {
    Json j;
    j["n"] = std::to_string(p.modulus);
    j["base"] = p.base.get_str();
    j["r"] = p.r();
    j["cosets"] = Json::array();
    for (const auto& c : p.cosets) j["cosets"].push_back(c.elements);
    return j;
}

/// One coset per line, in the C_s = {...} layout.
inline std::string to_text(const CosetPartition& p) {
    std::ostringstream os;
    for (const auto& c : p.cosets) {
        os << "C_" << c.leader << " = {";
        for (std::size_t i = 0; i < c.elements.size(); ++i) os << (i ? ", " : "") << c.elements[i];
        os << "}\n";
    }
    return os.str();
}

} // namespace primover

#endif
