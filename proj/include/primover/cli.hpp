#ifndef PRIMOVER_CLI_HPP
#define PRIMOVER_CLI_HPP

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "primover/bfile.hpp"
#include "primover/io.hpp"
#include "primover/search.hpp"

namespace primover::cli {

enum ExitCode : int { kOk = 0, kMismatch = 1, kUsage = 2, kPartial = 3 };

enum class Format { Text, Json, Csv };

inline std::optional<Format> parse_format(const std::string& s) {
    if (s == "text") return Format::Text;
    if (s == "json") return Format::Json;
    if (s == "csv") return Format::Csv;
    return std::nullopt;
}

inline int cmd_classify(const Natural& n, const Natural& b, Format fmt, const Options& opts, std::ostream& out,
                        std::ostream& err) {
    ClassificationReport rep;
    try {
        rep = classify(b, n, opts);
    } catch (const DomainError& e) {
        err << e.what() << '\n';
        return kUsage;
    }
    switch (fmt) {
    case Format::Json: out << to_json(rep).dump() << '\n'; break;
    case Format::Csv: out << csv_header() << '\n' << to_csv_row(rep) << '\n'; break;
    case Format::Text: out << to_text(rep); break;
    }
    return rep.complete ? kOk : kPartial;
}

inline int cmd_search(const SearchQuery& q, Format fmt, const Options& opts, std::ostream& out, std::ostream& err) {
    const auto started = std::chrono::steady_clock::now();
    SearchResult res;
    try {
        res = run_search(q, opts);
    } catch (const DomainError& e) {
        err << e.what() << '\n';
        return kUsage;
    }
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - started;

    switch (fmt) {
    case Format::Text:
        for (auto v : res.hits) out << v << '\n';
        break;
    case Format::Csv:
        out << "n\n";
        for (auto v : res.hits) out << v << '\n';
        break;
    case Format::Json: {
        Json j;
        j["base"] = q.base.get_str();
        j["class"] = to_string(q.target);
        j["min"] = std::to_string(q.lo);
        j["max"] = std::to_string(q.hi);
        j["values"] = Json::array();
        for (auto v : res.hits) j["values"].push_back(std::to_string(v));
        out << j.dump() << '\n';
        break;
    }
    }
    for (const auto& s : res.skipped) err << "skipped " << s.n << ": " << s.reason << '\n';
    err << "# count=" << res.hits.size() << " skipped=" << res.skipped.size() << " elapsed=" << std::fixed
        << std::setprecision(3) << elapsed.count() << "s\n";
    return res.skipped.empty() ? kOk : kPartial;
}

inline int cmd_cosets(const Natural& n, const Natural& b, Format fmt, const Options& opts, std::ostream& out,
                      std::ostream& err) {
    CosetPartition part;
    try {
        part = coset_partition(b, n, opts);
    } catch (const DomainError& e) {
        err << e.what() << '\n';
        return kUsage;
    } catch (const CapExceededError& e) {
        err << e.what() << '\n';
        return kUsage;
    }
    switch (fmt) {
    case Format::Text: out << to_text(part); break;
    case Format::Json: out << to_json(part).dump() << '\n'; break;
    case Format::Csv:
        out << "leader,size,elements\n";
        for (const auto& c : part.cosets) {
            out << c.leader << ',' << c.elements.size() << ',';
            for (std::size_t i = 0; i < c.elements.size(); ++i) out << (i ? " " : "") << c.elements[i];
            out << '\n';
        }
        break;
    }
    return kOk;
}

struct GenerateParams {
    std::optional<std::uint64_t> p;
    std::optional<std::uint64_t> q;
    std::optional<std::uint64_t> n;
};

inline int cmd_generate(const std::string& family, const GenerateParams& params, const Natural& b, Format fmt,
                        const Options& opts, std::ostream& out, std::ostream& err) {
    auto need = [&](const std::optional<std::uint64_t>& v, const char* flag) {
        if (!v) throw DomainError("generate " + family + ": missing --" + flag);
        return *v;
    };
    FamilyNumber f;
    try {
        if (family == "fermat") {
            f = gen_fermat(b, static_cast<unsigned>(need(params.n, "n")), opts);
        } else if (family == "mersenne") {
            f = gen_mersenne(b, need(params.p, "p"), opts);
        } else if (family == "phi-pq") {
            f = phi_pq(b, need(params.q, "q"), need(params.p, "p"), opts);
        } else if (family == "phi-prime-power") {
            f = phi_prime_power(b, need(params.p, "p"), static_cast<unsigned>(need(params.n, "n")), opts);
        } else if (family == "moebius") {
            f = moebius_product(b, need(params.n, "n"), opts);
        } else {
            err << "generate: unknown family '" << family
                << "' (expected fermat, mersenne, phi-pq, phi-prime-power, moebius)\n";
            return kUsage;
        }
    } catch (const DomainError& e) {
        err << e.what() << '\n';
        return kUsage;
    }
    switch (fmt) {
    case Format::Json: out << to_json(f).dump() << '\n'; break;
    case Format::Csv: out << to_csv(f); break;
    case Format::Text: out << to_text(f); break;
    }
    return f.value_verdict.determined && f.reduced_verdict.determined ? kOk : kPartial;
}

inline int cmd_verify(const std::string& path, const Natural& b, TargetClass target, std::uint64_t limit,
                      unsigned jobs, const Options& opts, std::ostream& out, std::ostream& err) {
    std::ifstream in(path);
    if (!in) {
        err << "verify: cannot read " << path << '\n';
        return kUsage;
    }
    std::vector<BFileEntry> entries;
    try {
        entries = parse_bfile(in);
    } catch (const BFileError& e) {
        err << "verify: " << e.what() << '\n';
        return kUsage;
    }

    SearchResult res;
    try {
        res = run_search({b, 2, std::max<std::uint64_t>(limit, 2), target, jobs}, opts);
    } catch (const DomainError& e) {
        err << "verify: " << e.what() << '\n';
        return kUsage;
    }
    std::vector<Natural> computed;
    for (auto v : res.hits) computed.push_back(natural(v));
    const BFileComparison cmp = compare_bfile(entries, computed, natural(limit));
    out << cmp.describe() << '\n';
    for (const auto& s : res.skipped) err << "skipped " << s.n << ": " << s.reason << '\n';
    if (cmp.outcome == BFileComparison::Outcome::Mismatch) return kMismatch;
    return res.skipped.empty() ? kOk : kPartial;
}

/// Parses argv and dispatches. Everything the commands print goes to
/// `out`/`err`, so callers other than main can capture it.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Pseudoprime hierarchy classifier: fermat, strong, super, overpseudoprime, primover"};
    app.require_subcommand(1);

    std::string base_text = "2", format_text = "text";
    unsigned jobs = 1;
    Options opts;
    app.add_option("--base,-b", base_text, "Base b >= 2")->capture_default_str();
    app.add_option("--format", format_text, "text, json or csv")->capture_default_str();
    app.add_option("--jobs,-j", jobs, "Worker threads for search and verify")->capture_default_str();
    app.add_option("--mr-rounds", opts.mr_rounds, "Extra Miller-Rabin rounds above 2^64")->capture_default_str();
    app.add_option("--factor-budget", opts.factor_budget, "Modular multiplications allowed for rho")
        ->capture_default_str();
    app.add_option("--seed", opts.seed, "Seed for the randomized factorizer")->capture_default_str();

    std::string n_text;
    auto* classify_cmd = app.add_subcommand("classify", "Classify n to the given base");
    classify_cmd->add_option("n", n_text, "Integer to classify")->required();
    classify_cmd->fallthrough();

    std::string class_text = "over";
    std::uint64_t lo = 2, hi = 0;
    auto* search_cmd = app.add_subcommand("search", "List members of a class in [min, max]");
    search_cmd->add_option("--class", class_text, "fermat, strong, super, over or primover")->capture_default_str();
    search_cmd->add_option("--min", lo, "Lower bound")->capture_default_str();
    search_cmd->add_option("--max", hi, "Upper bound")->required();
    search_cmd->fallthrough();

    auto* cosets_cmd = app.add_subcommand("cosets", "Print the cyclotomic cosets of the base modulo n");
    cosets_cmd->add_option("n", n_text, "Modulus")->required();
    cosets_cmd->fallthrough();

    std::string family;
    GenerateParams params;
    auto* generate_cmd = app.add_subcommand("generate", "Build a family member and classify it");
    generate_cmd->add_option("family", family, "fermat, mersenne, phi-pq, phi-prime-power, moebius")->required();
    generate_cmd->add_option("--p", params.p, "Prime parameter p");
    generate_cmd->add_option("--q", params.q, "Prime parameter q");
    generate_cmd->add_option("--n", params.n, "Exponent or index parameter n");
    generate_cmd->fallthrough();

    std::string bfile;
    std::uint64_t verify_max = 0;
    std::string verify_class = "over";
    auto* verify_cmd = app.add_subcommand("verify", "Compare a b-file against a locally computed sequence");
    verify_cmd->add_option("--bfile", bfile, "Path to the b-file")->required();
    verify_cmd->add_option("--class", verify_class, "Sequence class")->capture_default_str();
    verify_cmd->add_option("--max", verify_max, "Compare terms up to this value")->required();
    verify_cmd->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return kUsage;
    }

    const auto base = parse_natural(base_text);
    if (!base || *base < 2) {
        err << "invalid --base '" << base_text << "'\n";
        return kUsage;
    }
    const auto fmt = parse_format(format_text);
    if (!fmt) {
        err << "invalid --format '" << format_text << "' (expected text, json or csv)\n";
        return kUsage;
    }
    auto parse_n = [&]() -> std::optional<Natural> {
        auto v = parse_natural(n_text);
        if (!v) err << "invalid integer '" << n_text << "'\n";
        return v;
    };

    if (*classify_cmd) {
        const auto n = parse_n();
        if (!n) return kUsage;
        return cmd_classify(*n, *base, *fmt, opts, out, err);
    }
    if (*search_cmd) {
        const auto target = parse_target_class(class_text);
        if (!target) {
            err << "invalid --class '" << class_text << "'\n";
            return kUsage;
        }
        return cmd_search({*base, lo, hi, *target, jobs}, *fmt, opts, out, err);
    }
    if (*cosets_cmd) {
        const auto n = parse_n();
        if (!n) return kUsage;
        return cmd_cosets(*n, *base, *fmt, opts, out, err);
    }
    if (*generate_cmd) return cmd_generate(family, params, *base, *fmt, opts, out, err);
    if (*verify_cmd) {
        const auto target = parse_target_class(verify_class);
        if (!target) {
            err << "invalid --class '" << verify_class << "'\n";
            return kUsage;
        }
        return cmd_verify(bfile, *base, *target, verify_max, jobs, opts, out, err);
    }
    return kUsage;
}

} // namespace primover::cli

#endif
