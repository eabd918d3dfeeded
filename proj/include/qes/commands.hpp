#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qes/export.hpp"
#include "qes/system.hpp"

namespace qes::cli {

enum ExitCode : int { kOk = 0, kValidationFailed = 1, kVerifyFailed = 2, kUsage = 3 };

struct RunConfig {
    std::optional<std::string> u;
    std::optional<double> eps0;
    std::optional<double> eps1;
    double period = 6.283185307179586;
    int grid = 1024;
    int modes = 64;
    std::optional<std::string> out;
    io::Format format = io::Format::Csv;
    double tol = 1e-6;
    std::optional<std::string> input;  // verify an existing export instead of a generator
    double perturb = 0.0;              // amplitude of cos(2 pi x / L) added to V before the oracle runs
    std::string example;
};

// Default wavefunction normalisations for the Razavy example plot data.
struct PlotConstants {
    double c0_minus = 0.05, c1_minus = 0.3, c2_minus = 1.3;
    double c1_plus = 0.2, c2_plus = 0.7;
};

io::GridExport construct_export(const ConstructedSystem& sys, int grid);
io::GridExport razavy_example_export(const ConstructedSystem& sys, int grid, const PlotConstants& c = {});

struct VerifyCheck {
    std::string name;
    bool passed = true;
    std::string detail;
};

struct VerifyReport {
    std::vector<VerifyCheck> checks;
    std::vector<std::string> notes;
    bool passed() const;
};

VerifyReport verify_system(const ConstructedSystem& sys, int modes, double tol, double perturb = 0.0);
VerifyReport verify_export(const io::GridExport& g, int modes, double tol, double perturb = 0.0);

int cmd_validate(const RunConfig& c, std::ostream& out, std::ostream& err);
int cmd_construct(const RunConfig& c, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& c, std::ostream& out, std::ostream& err);
int cmd_example(const RunConfig& c, std::ostream& out, std::ostream& err);

// Full command line, argv[0] included.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qes::cli
