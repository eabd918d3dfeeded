#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "qes/commands.hpp"
#include "qes/errors.hpp"
#include "qes/export.hpp"

using namespace qes;

namespace {

const std::string kRazavyU = "4*eps0*eps1*sin(x)^2";

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "qesforge");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "qesforge_cli_tests";
    std::filesystem::create_directories(dir);
    return dir / name;
}

}  // namespace

TEST_SUITE("cli") {
    TEST_CASE("validate exit codes") {
        CHECK(invoke({"validate", "--u", kRazavyU, "--eps0", "1", "--eps1", "0.5", "--period", "6.283185307"}).code ==
              cli::kOk);
        const auto bad = invoke({"validate", "--u", kRazavyU, "--eps0", "0.4", "--eps1", "-0.1"});
        CHECK(bad.code == cli::kValidationFailed);
        const auto low = invoke({"validate", "--u", kRazavyU, "--eps0", "0.4", "--eps1", "0.5"});
        CHECK(low.code == cli::kValidationFailed);
        CHECK(low.out.find("discriminant") != std::string::npos);
        CHECK(invoke({"validate", "--u", "sin("}).code == cli::kUsage);
        CHECK(invoke({"validate", "--u", kRazavyU}).code == cli::kUsage);
        CHECK(invoke({"validate", "--bogus"}).code == cli::kUsage);
        CHECK(invoke({}).code == cli::kUsage);
    }

    TEST_CASE("construct writes the eleven-column grid") {
        const auto path = scratch("razavy.json");
        const auto r = invoke({"construct", "--u", kRazavyU, "--eps0", "1", "--eps1", "0.5", "--grid", "1024",
                               "--format", "json", "--out", path.string()});
        REQUIRE(r.code == cli::kOk);
        const auto g = io::read_export(path);
        CHECK(g.columns == io::construct_columns);
        CHECK(g.rows() == 1024);
        REQUIRE(g.energies.size() == 3);
        CHECK(g.energies[0] == 0.0);
        CHECK(g.energies[1] == 1.0);
        CHECK(g.energies[2] == 1.5);
        CHECK(g.column("x")[0] == 0.0);
        CHECK(g.column("V_minus")[0] == doctest::Approx(-0.56066017).epsilon(1e-8));
        const auto& x = g.column("x");
        for (std::size_t i = 1; i < x.size(); ++i) REQUIRE(x[i] > x[i - 1]);
        CHECK(x.back() < g.numbers.at("period"));
    }

    TEST_CASE("construct minimal grid and usage failures") {
        const auto r = invoke({"construct", "--u", kRazavyU, "--eps0", "1", "--eps1", "0.5", "--grid", "64"});
        REQUIRE(r.code == cli::kOk);
        const auto g = io::from_csv(r.out);
        CHECK(g.columns.size() == 11);
        CHECK(g.rows() == 64);
        CHECK(invoke({"construct", "--u", kRazavyU, "--eps0", "1", "--eps1", "0.5", "--grid", "32"}).code ==
              cli::kUsage);
        CHECK(invoke({"construct", "--u", kRazavyU, "--eps0", "1", "--eps1", "0.5", "--format", "xml"}).code ==
              cli::kUsage);
        CHECK(invoke({"construct", "--u", "sin(x)", "--eps0", "1", "--eps1", "0.5"}).code == cli::kValidationFailed);
    }

    TEST_CASE("verify accepts the construction and rejects a perturbed potential") {
        const auto ok = invoke({"verify", "--u", kRazavyU, "--eps0", "1", "--eps1", "0.5", "--modes", "64"});
        CHECK(ok.code == cli::kOk);
        CHECK(ok.out.find("verified") != std::string::npos);
        const auto broken =
            invoke({"verify", "--u", kRazavyU, "--eps0", "1", "--eps1", "0.5", "--modes", "64", "--perturb", "0.1"});
        CHECK(broken.code == cli::kVerifyFailed);
        CHECK(broken.err.find("energy mismatch") != std::string::npos);
        const auto few = invoke({"verify", "--u", kRazavyU, "--eps0", "1", "--eps1", "0.5", "--modes", "16"});
        CHECK(few.out.find("warning") != std::string::npos);
        CHECK(invoke({"verify", "--u", kRazavyU, "--eps0", "1", "--eps1", "0.5", "--modes", "8"}).code == cli::kUsage);
    }

    TEST_CASE("verify an exported file") {
        const auto path = scratch("razavy.csv");
        REQUIRE(invoke({"construct", "--u", kRazavyU, "--eps0", "1", "--eps1", "0.5", "--grid", "256", "--out",
                        path.string()})
                    .code == cli::kOk);
        CHECK(invoke({"verify", "--in", path.string()}).code == cli::kOk);
        CHECK(invoke({"verify", "--in", path.string(), "--perturb", "0.1"}).code == cli::kVerifyFailed);
        CHECK(invoke({"verify", "--in", scratch("missing.csv").string()}).code != cli::kOk);
    }

    TEST_CASE("razavy example with reference columns") {
        const auto r = invoke({"example", "razavy", "--eps0", "1", "--grid", "128"});
        REQUIRE(r.code == cli::kOk);
        const auto g = io::from_csv(r.out);
        CHECK(g.columns.size() == 22);
        CHECK(g.numbers.at("C0_minus") == 0.05);
        CHECK(g.numbers.at("C2_plus") == 0.7);
        const auto& v = g.column("V_minus");
        const auto& ref = g.column("ref_V_minus");
        for (std::size_t i = 0; i < v.size(); ++i) CHECK(std::abs(v[i] - ref[i]) < 1e-8);
        CHECK(invoke({"example", "unknown"}).code == cli::kUsage);
        CHECK(invoke({"example", "razavy", "--eps0", "1", "--eps1", "0.7"}).code == cli::kUsage);
    }

    TEST_CASE("json round trip is bit identical") {
        io::GridExport g;
        g.text["tool"] = "qesforge";
        g.numbers["eps0"] = 0.1;
        g.energies = {0.0, 0.1, 1.0 / 3.0};
        std::vector<double> a, b;
        for (int i = 0; i < 200; ++i) {
            a.push_back(std::sin(0.37 * i) / 7.0);
            b.push_back(std::exp(-0.01 * i) * 1e-300);
        }
        g.add_column("a", a);
        g.add_column("b", b);
        const auto path = scratch("roundtrip.json");
        io::write_export(path, g, io::Format::Json);
        const auto back = io::read_export(path);
        CHECK(back.columns == g.columns);
        CHECK(back.data == g.data);
        CHECK(back.energies == g.energies);
        CHECK(back.numbers == g.numbers);
        CHECK(back.text == g.text);

        const auto csv = io::from_csv(io::to_csv(g));
        CHECK(csv.data == g.data);
        CHECK(io::to_csv(g).find("\r\n") != std::string::npos);
    }

    TEST_CASE("non-finite values") {
        io::GridExport g;
        g.add_column("x", {0.0, 1.0});
        g.add_column("w", {std::nan(""), 2.0});
        const auto back = io::from_json(io::to_json(g));
        CHECK(std::isnan(back.column("w")[0]));
        CHECK(back.column("w")[1] == 2.0);
        CHECK_THROWS_AS(io::parse_format("xml"), InvalidArgument);
    }
}
