#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "primover/cli.hpp"

using namespace primover;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "primover");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

class TempFile {
public:
    explicit TempFile(const std::string& content) {
        static int counter = 0;
        path_ = std::filesystem::temp_directory_path() /
                ("primover_bfile_" + std::to_string(::getpid()) + "_" + std::to_string(counter++) + ".txt");
        std::ofstream(path_) << content;
    }
    ~TempFile() { std::filesystem::remove(path_); }
    std::string path() const { return path_.string(); }

private:
    std::filesystem::path path_;
};

const std::vector<std::string> kBase2Over = {"2047", "3277", "4033", "8321", "65281", "80581", "85489", "88357"};

std::string bfile_of(const std::vector<std::string>& values) {
    std::string s = "# overpseudoprimes to base 2\n";
    for (std::size_t i = 0; i < values.size(); ++i) s += std::to_string(i + 1) + " " + values[i] + "\n";
    return s;
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

} // namespace

TEST(CliClassify, Examples) {
    auto a = run({"classify", "96916279", "--base", "2", "--format", "json"});
    ASSERT_EQ(a.code, 0) << a.err;
    auto j = Json::parse(a.out);
    EXPECT_TRUE(j["verdicts"]["super"].get<bool>());
    EXPECT_FALSE(j["verdicts"]["over"].get<bool>());

    auto b = run({"--format", "json", "classify", "74415361", "--base", "13"});
    ASSERT_EQ(b.code, 0);
    j = Json::parse(b.out);
    EXPECT_TRUE(j["verdicts"]["strong"].get<bool>());
    EXPECT_FALSE(j["verdicts"]["over"].get<bool>());

    auto c = run({"classify", "1194649", "--format", "json"});
    j = Json::parse(c.out);
    EXPECT_TRUE(j["verdicts"]["over"].get<bool>());
    EXPECT_EQ(j["factors"], Json::parse(R"([["1093","2"]])"));
}

TEST(CliClassify, TextAndCsv) {
    auto t = run({"classify", "2047"});
    EXPECT_NE(t.out.find("over=true"), std::string::npos) << t.out;
    auto c = run({"classify", "2047", "--format", "csv"});
    const auto ls = lines(c.out);
    ASSERT_EQ(ls.size(), 2u);
    EXPECT_EQ(ls[0], csv_header());
    EXPECT_EQ(ls[1].substr(0, 7), "2047,2,");
}

TEST(CliClassify, UsageErrorsExitTwo) {
    EXPECT_EQ(run({"classify", "10", "--base", "2"}).code, 2);      // not coprime
    EXPECT_EQ(run({"classify", "12x"}).code, 2);                    // parse failure
    EXPECT_EQ(run({"classify", "15", "--base", "1"}).code, 2);
    EXPECT_EQ(run({"classify", "15", "--format", "yaml"}).code, 2);
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
    const auto r = run({"classify", "10"});
    EXPECT_FALSE(r.err.empty());
    EXPECT_TRUE(r.out.empty());
}

TEST(CliClassify, BudgetExceededExitsThree) {
    const auto r = run({"--factor-budget", "10", "classify", "1000000016000000063"});  // 1000000007 * 1000000009
    EXPECT_EQ(r.code, 3);
    EXPECT_FALSE(r.out.empty());
}

TEST(CliClassify, HelpExitsZero) { EXPECT_EQ(run({"--help"}).code, 0); }

TEST(CliClassify, JsonRoundTripIsByteIdentical) {
    for (const char* n : {"2047", "96916279", "1194649", "1093", "561", "8191"}) {
        const auto r = run({"classify", n, "--format", "json"});
        std::string emitted = r.out;
        emitted.pop_back();  // trailing newline
        const ClassificationReport rep = report_from_json(Json::parse(emitted));
        EXPECT_EQ(to_json(rep).dump(), emitted) << n;
    }
    Options tight;
    tight.factor_budget = 10;
    const auto partial = classify(2, Natural("1000000016000000063"), tight);
    const std::string s = to_json(partial).dump();
    EXPECT_EQ(to_json(report_from_json(Json::parse(s))).dump(), s);
}

TEST(CliSearch, Examples) {
    auto a = run({"search", "--base", "2", "--class", "over", "--max", "100000"});
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(lines(a.out), kBase2Over);
    EXPECT_NE(a.err.find("# count=8 skipped=0"), std::string::npos) << a.err;

    auto b = run({"search", "--base", "2", "--class", "over", "--min", "3", "--max", "2000"});
    EXPECT_TRUE(b.out.empty());

    auto c = run({"search", "--base", "3", "--class", "over", "--max", "200"});
    EXPECT_EQ(lines(c.out), std::vector<std::string>{"121"});
}

TEST(CliSearch, OtherClasses) {
    auto f = run({"search", "--class", "fermat", "--max", "2000"});
    EXPECT_EQ(lines(f.out), (std::vector<std::string>{"341", "561", "645", "1105", "1387", "1729", "1905"}));
    auto s = run({"search", "--class", "strong", "--max", "10000"});
    EXPECT_EQ(lines(s.out), (std::vector<std::string>{"2047", "3277", "4033", "4681", "8321"}));
    auto p = run({"search", "--class", "primover", "--max", "20"});
    EXPECT_EQ(lines(p.out), (std::vector<std::string>{"3", "5", "7", "11", "13", "17", "19"}));
    EXPECT_EQ(run({"search", "--class", "nope", "--max", "20"}).code, 2);
    EXPECT_EQ(run({"search", "--class", "over"}).code, 2);  // --max required
}

TEST(CliSearch, ParallelOutputIsIdentical) {
    for (const char* cls : {"over", "super", "strong", "fermat", "primover"}) {
        auto one = run({"search", "--base", "3", "--class", cls, "--max", "60000", "--jobs", "1"});
        auto four = run({"search", "--base", "3", "--class", cls, "--max", "60000", "--jobs", "4"});
        EXPECT_EQ(one.out, four.out) << cls;
        EXPECT_FALSE(one.out.empty()) << cls;
    }
    auto j1 = run({"--format", "json", "search", "--max", "100000", "-j", "1"});
    auto j8 = run({"--format", "json", "search", "--max", "100000", "-j", "8"});
    EXPECT_EQ(j1.out, j8.out);
}

TEST(CliSearch, EveryHitClassifiesTheSame) {
    for (unsigned b : {2u, 5u}) {
        for (const char* cls : {"over", "super", "strong", "fermat"}) {
            const auto r = run({"search", "--base", std::to_string(b), "--class", cls, "--max", "30000", "-j", "2"});
            const auto target = *parse_target_class(cls);
            for (const auto& line : lines(r.out)) {
                const auto rep = classify(b, Natural(line));
                bool v = false;
                switch (target) {
                case TargetClass::Fermat: v = rep.is_fermat_psp; break;
                case TargetClass::Strong: v = rep.is_strong_psp; break;
                case TargetClass::Super: v = rep.is_super_psp; break;
                case TargetClass::Over: v = rep.is_overpseudoprime; break;
                case TargetClass::Primover: v = rep.is_primover; break;
                }
                ASSERT_TRUE(v) << cls << " " << line;
            }
        }
    }
}

TEST(CliCosets, Examples) {
    auto a = run({"cosets", "15", "--base", "2"});
    EXPECT_EQ(lines(a.out), (std::vector<std::string>{"C_1 = {1, 2, 4, 8}", "C_3 = {3, 6, 12, 9}", "C_5 = {5, 10}",
                                                     "C_7 = {7, 14, 13, 11}"}));
    EXPECT_EQ(lines(run({"cosets", "7"}).out).size(), 2u);
    EXPECT_EQ(lines(run({"cosets", "9"}).out).size(), 2u);
    EXPECT_EQ(run({"cosets", "1000000007"}).code, 2);  // above the enumeration cap
    EXPECT_EQ(run({"cosets", "14"}).code, 2);
}

TEST(CliGenerate, Examples) {
    auto a = run({"generate", "mersenne", "--base", "2", "--p", "11", "--format", "json"});
    ASSERT_EQ(a.code, 0) << a.err;
    auto j = Json::parse(a.out);
    EXPECT_EQ(j["value"], "2047");
    EXPECT_TRUE(j["verdict"]["overpseudoprime"].get<bool>());

    j = Json::parse(run({"--format", "json", "generate", "fermat", "--n", "5"}).out);
    EXPECT_EQ(j["value"], "4294967297");
    EXPECT_TRUE(j["verdict"]["overpseudoprime"].get<bool>());

    j = Json::parse(run({"--format", "json", "generate", "phi-pq", "--q", "3", "--p", "5"}).out);
    EXPECT_EQ(j["value"], "151");
    EXPECT_EQ(j["verdict"]["primality"], "prime");
}

TEST(CliGenerate, HypothesisViolationsExitTwo) {
    auto a = run({"generate", "fermat", "--base", "3", "--n", "2"});
    EXPECT_EQ(a.code, 2);
    EXPECT_NE(a.err.find("even"), std::string::npos);
    EXPECT_EQ(run({"generate", "mersenne", "--base", "3", "--p", "2"}).code, 2);
    EXPECT_EQ(run({"generate", "moebius", "--n", "12"}).code, 2);
    EXPECT_EQ(run({"generate", "phi-pq", "--q", "7", "--p", "5"}).code, 2);
    EXPECT_EQ(run({"generate", "mersenne"}).code, 2);  // missing --p
    EXPECT_EQ(run({"generate", "lucas", "--n", "3"}).code, 2);
}

TEST(CliVerify, MatchingFileAgrees) {
    TempFile f(bfile_of(kBase2Over));
    const auto r = run({"verify", "--bfile", f.path(), "--base", "2", "--class", "over", "--max", "100000"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "agree through index 8\n");
}

TEST(CliVerify, FileLongerThanLimitAgreesUpToLimit) {
    TempFile f(bfile_of(kBase2Over));
    const auto r = run({"verify", "--bfile", f.path(), "--max", "10000"});
    EXPECT_EQ(r.out, "agree through index 4\n");
}

TEST(CliVerify, AlteredValueIsReported) {
    auto values = kBase2Over;
    values[4] = "65287";
    TempFile f(bfile_of(values));
    const auto r = run({"verify", "--bfile", f.path(), "--max", "100000"});
    EXPECT_EQ(r.code, 1);
    EXPECT_EQ(r.out, "mismatch at index 5: file has 65287, computed 65281\n");
}

TEST(CliVerify, MissingTermIsReported) {
    auto values = kBase2Over;
    values.erase(values.begin() + 2);  // drop 4033
    TempFile f(bfile_of(values));
    const auto r = run({"verify", "--bfile", f.path(), "--max", "100000"});
    EXPECT_EQ(r.code, 1);
    EXPECT_EQ(r.out, "mismatch at index 3: file has 8321, computed 4033\n");
}

TEST(CliVerify, EmptyFile) {
    TempFile f("# nothing here\n\n");
    const auto r = run({"verify", "--bfile", f.path(), "--max", "100000"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "no entries\n");
}

TEST(CliVerify, MalformedLineReportsLineNumber) {
    TempFile f("# header\n1 2047\n2 3277 extra\n");
    const auto r = run({"verify", "--bfile", f.path(), "--max", "100000"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("line 3"), std::string::npos) << r.err;
    EXPECT_EQ(run({"verify", "--bfile", "/nonexistent/file", "--max", "10"}).code, 2);
}

TEST(BFile, ParseRules) {
    std::istringstream ok("# c\n\n1 2047\r\n  2\t3277\n");
    const auto e = parse_bfile(ok);
    ASSERT_EQ(e.size(), 2u);
    EXPECT_EQ(e[1].value, 3277);

    std::istringstream dup("1 5\n1 7\n");
    try {
        parse_bfile(dup);
        FAIL();
    } catch (const BFileError& err) {
        EXPECT_EQ(err.line(), 2u);
    }
    std::istringstream alpha("1 5\n2 x7\n");
    EXPECT_THROW(parse_bfile(alpha), BFileError);
    std::istringstream single("17\n");
    EXPECT_THROW(parse_bfile(single), BFileError);
}
