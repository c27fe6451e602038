#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "lambdajc/config.hpp"
#include "lambdajc/io.hpp"
#include "test_util.hpp"

using namespace lambdajc;

namespace {

const char* kEvolveConfig = R"(
experiment = "evolve"
output = "demo"

[field1]
kind = "pacs"
alpha_sq = 10.0
added_photons = 5

[field2]
kind = "coherent"
alpha_sq = 18.0

[params]
chi1 = 5.0
chi2 = 5.0
coupling = "constant"

[times]
start = 0.0
stop = 100.0
count = 2000
)";

}  // namespace

TEST_CASE("toml subset: sections, scalars, arrays, comments") {
    auto table = toml::parse(R"(
# comment
top = 3.5
name = "hello # not a comment"
flag = true

[section]
list = [1, 2.5, -3e-2]   # trailing comment
words = ["a", "b"]
)");
    CHECK(table[""].at("top").num == 3.5);
    CHECK(table[""].at("name").str == "hello # not a comment");
    CHECK(table[""].at("flag").boolean);
    CHECK(table["section"].at("list").numbers == std::vector<double>{1.0, 2.5, -3e-2});
    CHECK(table["section"].at("words").strings == std::vector<std::string>{"a", "b"});
}

TEST_CASE("toml subset: malformed input carries a line number") {
    CHECK_THROWS_WITH_AS(toml::parse("a = 1\nb 2\n"), doctest::Contains("line 2"),
                         std::runtime_error);
    CHECK_THROWS_AS(toml::parse("a = 1\na = 2\n"), std::runtime_error);
    CHECK_THROWS_AS(toml::parse("[s\n"), std::runtime_error);
    CHECK_THROWS_AS(toml::parse("k = [1, \"x\"]\n"), std::runtime_error);
}

TEST_CASE("a complete evolve config parses") {
    auto config = cli::parse_config_text(kEvolveConfig);
    CHECK(config.experiment == cli::Experiment::Evolve);
    CHECK(config.field1.kind == fock::FieldKind::PhotonAdded);
    CHECK(config.field1.added_photons == 5);
    CHECK(std::abs(config.field1.alpha - fock::Complex(std::sqrt(10.0))) < 1e-15);
    CHECK(config.params.chi1 == 5.0);
    CHECK(config.times.count == 2000);
    CHECK(config.output == "demo");
    CHECK(config.cutoff_epsilon == 1e-12);
}

TEST_CASE("a missing field2 section is reported by name") {
    std::string text(kEvolveConfig);
    size_t pos = text.find("[field2]");
    text = text.substr(0, pos) + text.substr(text.find("[params]"));
    try {
        cli::parse_config_text(text);
        FAIL("expected ConfigError");
    } catch (const cli::ConfigError& e) {
        bool mentions_field2 = false;
        for (const auto& err : e.errors())
            if (err.find("field2") != std::string::npos) mentions_field2 = true;
        CHECK(mentions_field2);
    }
}

TEST_CASE("validation lists every violation, not just the first") {
    std::string text(kEvolveConfig);
    text += "\nbogus_key = 1\n[times2]\nx = 2\n";
    text.replace(text.find("chi1 = 5.0"), 10, "chi1 = -1.0");
    try {
        cli::parse_config_text(text);
        FAIL("expected ConfigError");
    } catch (const cli::ConfigError& e) {
        CHECK(e.errors().size() >= 3);  // unknown key, unknown section, bad chi
    }
}

TEST_CASE("unknown keys are rejected; kind-irrelevant known keys are ignored") {
    std::string text(kEvolveConfig);
    // xi_r is meaningless for a coherent field2 but is a known field key
    text.replace(text.find("alpha_sq = 18.0"), 15, "alpha_sq = 18.0\nxi_r = 1.0");
    CHECK_NOTHROW(cli::parse_config_text(text));

    std::string bad(kEvolveConfig);
    bad.replace(bad.find("alpha_sq = 18.0"), 15, "alpha_sq = 18.0\nintensity = 3.0");
    CHECK_THROWS_AS(cli::parse_config_text(bad), cli::ConfigError);
}

TEST_CASE("eit config forbids two sweep lists at once") {
    std::string text = R"(
experiment = "eit"
[field1]
kind = "coherent"
alpha_sq = 10.0
[field2]
kind = "coherent"
alpha_sq = 18.0
[eit]
chi2_list = [0.1, 0.2]
delta2_list = [0.1]
)";
    CHECK_THROWS_AS(cli::parse_config_text(text), cli::ConfigError);
}

TEST_CASE("validate config parses with defaults") {
    auto config = cli::parse_config_text("experiment = \"validate\"\n");
    CHECK(config.experiment == cli::Experiment::Validate);
    CHECK(config.validate.seed == 42);
    CHECK(config.validate.cases == 100);
    CHECK(config.validate.tolerance == 1e-8);
}

TEST_CASE("overrides rewrite values before validation") {
    auto table = toml::parse(kEvolveConfig);
    cli::apply_override(table, "params.chi1=7.5");
    cli::apply_override(table, "output=\"other\"");
    cli::apply_override(table, "field2.kind=\"fock\"");
    cli::apply_override(table, "field2.fock_n=3");
    auto config = cli::parse_config(table);
    CHECK(config.params.chi1 == 7.5);
    CHECK(config.output == "other");
    CHECK(config.field2.kind == fock::FieldKind::Fock);
    CHECK(config.field2.fock_n == 3);
    CHECK_THROWS_AS(cli::apply_override(table, "no_equals_sign"), std::runtime_error);
    CHECK_THROWS_AS(cli::apply_override(table, "a.b.c=1"), std::runtime_error);
}

TEST_CASE("csv: empty table renders a header-only file") {
    io::Table table;
    table.columns = {"t", "svne"};
    CHECK(io::format_csv(table) == "t,svne\n");
}

TEST_CASE("csv round trip keeps 1e-12 relative accuracy") {
    testutil::Rng rng(7);
    io::Table table;
    table.columns = {"a", "b", "c"};
    for (int i = 0; i < 200; ++i)
        table.rows.push_back({rng.uniform(-1e6, 1e6), rng.uniform(-1.0, 1.0) * 1e-7,
                              rng.uniform(0.0, 20.0)});
    io::Table back = io::parse_csv(io::format_csv(table));
    REQUIRE(back.rows.size() == table.rows.size());
    CHECK(back.columns == table.columns);
    for (size_t i = 0; i < table.rows.size(); ++i)
        for (size_t j = 0; j < 3; ++j) {
            double x = table.rows[i][j], y = back.rows[i][j];
            CHECK(std::abs(x - y) <= 1e-12 * std::max(1.0, std::abs(x)));
        }
}

TEST_CASE("csv parser rejects garbage") {
    CHECK_THROWS_AS(io::parse_csv(""), std::runtime_error);
    CHECK_THROWS_AS(io::parse_csv("a,b\n1,2,3\n"), std::runtime_error);
    CHECK_THROWS_AS(io::parse_csv("a,b\n1,zap\n"), std::runtime_error);
}

TEST_CASE("atomic writes leave no temp file behind") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "lambdajc_io_test";
    fs::remove_all(dir);
    std::string target = (dir / "x" / "out.csv").string();
    io::write_text_atomic(target, "a,b\n1,2\n");
    CHECK(fs::exists(target));
    CHECK_FALSE(fs::exists(target + ".tmp"));
    std::ifstream in(target);
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(content == "a,b\n1,2\n");
    fs::remove_all(dir);
}
