#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>

#include "cli_runner.hpp"
#include "oracles.hpp"

namespace {

std::string temp_file(const std::string& name, const std::string& text) {
    const auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream(path) << text;
    return path.string();
}

}  // namespace

TEST(Cli, ExitCodes) {
    EXPECT_EQ(cli::run("complete " + cli::corpus("anticom") + " --cap 4").status, 0);
    EXPECT_EQ(cli::run("is-gb " + cli::corpus("lie") + " --cap 4").status, 0);
    EXPECT_EQ(cli::run("is-gb " + cli::corpus("prelie-ba") + " --cap 4").status, 1);
    EXPECT_EQ(cli::run("is-pbw " + cli::corpus("prelie-ab")).status, 0);
    EXPECT_EQ(cli::run("is-pbw " + cli::corpus("prelie-ba")).status, 1);
    EXPECT_EQ(cli::run("").status, 2);
    EXPECT_EQ(cli::run("frobnicate " + cli::corpus("com")).status, 2);
    EXPECT_EQ(cli::run("complete /nonexistent/file.op").status, 2);
    EXPECT_EQ(cli::run("dims " + cli::corpus("com") + " --up-to 9").status, 2);
    EXPECT_EQ(cli::run("complete " + cli::corpus("as") + " --word-mode lex").status, 2);
    EXPECT_EQ(cli::run("nf " + cli::corpus("com")).status, 2);
}

TEST(Cli, ParseErrorsReportFileLineAndColumn) {
    const auto path = temp_file("operad_cli_bad.op", "generator a 2\nrelation a(1,2) +\n");
    const auto r = cli::run("show " + path, "", true);
    EXPECT_EQ(r.status, 2);
    EXPECT_NE(r.out.find(path + ":2:18:"), std::string::npos) << r.out;
}

TEST(Cli, NormalFormAndDimensions) {
    const auto nf = cli::run("nf " + cli::corpus("com") + " 'mu(mu(1,3),2)'");
    EXPECT_EQ(nf.status, 0);
    EXPECT_NE(nf.out.find("normal form: mu(1,mu(2,3))"), std::string::npos) << nf.out;
    const auto dims = cli::run("dims " + cli::corpus("lie") + " --up-to 6 --json");
    ASSERT_EQ(dims.status, 0);
    const auto j = nlohmann::json::parse(dims.out);
    EXPECT_EQ(j["dimensions"], nlohmann::json({1, 1, 2, 6, 24, 120})) << dims.out;
}

TEST(Cli, CompleteMatchesGoldenJson) {
    for (const auto& entry : std::filesystem::directory_iterator(OPERAD_CORPUS_DIR)) {
        if (entry.path().extension() != ".op") {
            continue;
        }
        const auto name = entry.path().stem().string();
        const auto golden = oracle::read_text(std::string(OPERAD_CORPUS_DIR) + "/expected/" + name + ".json");
        const auto r = cli::run("complete '" + entry.path().string() + "' --json", "OPERAD_THREADS=1");
        EXPECT_EQ(r.status, 0) << name;
        EXPECT_EQ(r.out, golden) << name;
    }
}

TEST(Cli, OutputIndependentOfThreadCount) {
    for (const char* name : {"anticom", "as", "leib", "perm", "two-com", "k-lie"}) {
        const auto a = cli::run("complete " + cli::corpus(name) + " --json", "OPERAD_THREADS=1");
        const auto b = cli::run("complete " + cli::corpus(name) + " --json", "OPERAD_THREADS=3");
        const auto c = cli::run("complete " + cli::corpus(name) + " --json", "OPERAD_THREADS=0");
        EXPECT_EQ(a.out, b.out) << name;
        EXPECT_EQ(a.out, c.out) << name;
    }
}
