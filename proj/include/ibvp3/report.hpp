#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "ibvp3/series.hpp"

namespace ibvp3 {

enum class ReportKind { classify, zeros, verdict, pseudo4 };
enum class OutputFormat { text, json };
enum class DirectionChoice { spec, plus, minus, both };

struct ReportOptions {
    int k_max = 12;
    double residual_tol = 1e-12;
    OutputFormat format = OutputFormat::text;
    DirectionChoice direction = DirectionChoice::spec;
};

struct ZeroTableRow {
    Family family = Family::lambda;
    int j = 0;
    int k = 0;
    Complex asymptotic{0.0, 0.0};
    Complex refined{0.0, 0.0};
    double residual = 0.0;
    double error = 0.0; // |refined - asymptotic|
};

/// Assembled result of one CLI command. Identical inputs and options
/// produce identical reports (and byte-identical renderings).
struct Report {
    ReportKind kind = ReportKind::classify;
    std::vector<std::string> warnings;

    std::optional<ProblemSpec> spec;
    std::optional<CanonicalForm> canonical;
    std::optional<ClassLabel> label;

    std::optional<Verdict> verdict;

    bool has_zero_table = false;
    std::vector<ZeroTableRow> zero_table;
    std::string zeros_note;
    std::optional<double> fitted_decay_rate;

    std::vector<GrowthProfile> growth;

    std::array<double, 4> pseudo4_constants{};
    std::optional<FourthOrderCriterion> pseudo4;
};

Report run_classify(const std::string& document, const ReportOptions& opts = {});
Report run_zeros(const std::string& document, const ReportOptions& opts = {});
Report run_verdict(const std::string& document, const ReportOptions& opts = {});
Report run_pseudo4(const std::array<double, 4>& constants);

std::string render_report(const Report& report, OutputFormat format);

} // namespace ibvp3
