#include "ibvp3/report.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

namespace ibvp3 {

using json = nlohmann::ordered_json;

namespace {

AnalysisConfig analysis_config(const ReportOptions& opts) {
    AnalysisConfig cfg;
    cfg.k_depth = opts.k_max;
    cfg.search.residual_tol = opts.residual_tol;
    return cfg;
}

std::vector<Direction> growth_directions(const ReportOptions& opts,
                                         const ProblemSpec& spec) {
    switch (opts.direction) {
        case DirectionChoice::spec: return {spec.direction};
        case DirectionChoice::plus: return {Direction::plus_i};
        case DirectionChoice::minus: return {Direction::minus_i};
        case DirectionChoice::both:
            return {Direction::plus_i, Direction::minus_i};
    }
    return {spec.direction};
}

void fill_zero_table(Report& report, const CanonicalForm& cf,
                     const ReportOptions& opts) {
    report.has_zero_table = true;
    if (cf.form() == Form::I) {
        report.zeros_note = "No such lambda_k or mu_k";
        return;
    }
    ZeroSearchOptions search;
    search.residual_tol = opts.residual_tol;

    std::vector<Family> families{Family::lambda};
    if (cf.form() == Form::IV) families.push_back(Family::mu);
    for (Family fam : families) {
        for (int k = 1; k <= opts.k_max; ++k) {
            ZeroTableRow row;
            row.family = fam;
            row.j = 0;
            row.k = k;
            try {
                const ZeroRecord rec = refine_family_zero(cf, fam, k, search);
                row.asymptotic = asymptotic_zero(cf, fam, k);
                row.refined = rec.value;
                row.residual = rec.residual;
                row.error = std::abs(row.refined - row.asymptotic);
                report.zero_table.push_back(row);
            } catch (const ZeroMergedWithOrigin& e) {
                report.warnings.push_back(e.what());
            }
        }
    }

    if (opts.k_max >= 3) {
        const auto check = validate_asymptotics(cf, opts.k_max, Family::lambda, search);
        report.fitted_decay_rate = check.fitted_rate;
    }
}

Report analyze(const std::string& document, ReportKind kind,
               const ReportOptions& opts) {
    if (opts.k_max < 1)
        throw ValidationError("k_max must be >= 1");
    Report report;
    report.kind = kind;
    report.spec = parse_spec(document);
    report.warnings = report.spec->warnings;
    report.canonical = canonical_form(*report.spec);
    report.label = classify(*report.canonical);

    if (kind == ReportKind::zeros || kind == ReportKind::verdict)
        fill_zero_table(report, *report.canonical, opts);

    if (kind == ReportKind::verdict) {
        const AnalysisConfig cfg = analysis_config(opts);
        std::vector<ZeroRecord> zeros;
        if (report.canonical->form() != Form::I)
            zeros = family_zeros(*report.canonical, cfg.k_depth, cfg.search);
        report.verdict = verdict_from_parts(*report.canonical, zeros, cfg.bound);
        for (Direction d : growth_directions(opts, *report.spec))
            report.growth.push_back(growth_profile(zeros, d, 1.0, cfg));
    }
    return report;
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

json problem_json(const ProblemSpec& spec) {
    json j;
    j["direction"] = direction_name(spec.direction);
    j["bc"] = json::array();
    for (const auto& row : spec.rows) {
        json r;
        r["order"] = row.order;
        r["side"] = side_name(row.side);
        switch (row.side) {
            case Side::left:
                r["left"] = 1.0;
                r["right"] = 0.0;
                break;
            case Side::right:
                r["left"] = 0.0;
                r["right"] = 1.0;
                break;
            case Side::coupled:
                r["left"] = 1.0;
                r["right"] = -row.beta;
                r["beta"] = row.beta;
                break;
        }
        j["bc"].push_back(r);
    }
    j["couplings"] = spec.couplings;
    return j;
}

json canonical_json(const CanonicalForm& cf) {
    json j;
    j["form"] = form_name(cf.form());
    j["monomial_degree"] = cf.monomial_degree();
    if (cf.has_bracket()) {
        j["W"] = cf.W();
        j["X"] = complex_json(cf.X());
        if (cf.form() == Form::IV) j["Y"] = cf.Y();
    }
    return j;
}

json verdict_json(const Verdict& v) {
    json j;
    j["conditioned_plus"] = v.conditioned_plus;
    j["conditioned_minus"] = v.conditioned_minus;
    j["bound_plus"] = v.bound_plus;
    j["bound_minus"] = v.bound_minus;
    j["wellposed_plus"] = v.wellposed_plus;
    j["wellposed_minus"] = v.wellposed_minus;
    return j;
}

std::string render_json_report(const Report& report) {
    json j;
    j["schema"] = 1;
    switch (report.kind) {
        case ReportKind::classify: j["command"] = "classify"; break;
        case ReportKind::zeros: j["command"] = "zeros"; break;
        case ReportKind::verdict: j["command"] = "verdict"; break;
        case ReportKind::pseudo4: j["command"] = "pseudo4"; break;
    }

    if (report.kind == ReportKind::pseudo4) {
        j["constants"] = report.pseudo4_constants;
        j["beta_numerator"] = report.pseudo4->numerator;
        j["beta_denominator"] = report.pseudo4->denominator;
        j["ill_posed"] = report.pseudo4->ill_posed;
        j["warnings"] = report.warnings;
        return j.dump(2) + "\n";
    }

    j["problem"] = problem_json(*report.spec);
    j["canonical_form"] = canonical_json(*report.canonical);
    j["class"] = class_name(*report.label);

    if (report.verdict) j["verdict"] = verdict_json(*report.verdict);

    if (report.has_zero_table) {
        json z;
        z["origin"] = {{"re", 0.0},
                       {"im", 0.0},
                       {"note", "monomial-factor zero, excluded from growth analysis"}};
        z["records"] = json::array();
        for (const auto& row : report.zero_table) {
            json r;
            r["family"] = family_name(row.family);
            r["j"] = row.j;
            r["k"] = row.k;
            r["re"] = row.refined.real();
            r["im"] = row.refined.imag();
            r["residual"] = row.residual;
            r["asymptotic_re"] = row.asymptotic.real();
            r["asymptotic_im"] = row.asymptotic.imag();
            r["error"] = row.error;
            z["records"].push_back(r);
        }
        if (!report.zeros_note.empty()) z["note"] = report.zeros_note;
        if (report.fitted_decay_rate)
            z["fitted_decay_rate"] = *report.fitted_decay_rate;
        j["zeros"] = z;
    }

    if (!report.growth.empty()) {
        j["growth"] = json::array();
        for (const auto& g : report.growth) {
            json e;
            e["direction"] = direction_name(g.a);
            e["t"] = g.t;
            e["bounded_above"] = g.bounded_above;
            e["entries"] = json::array();
            for (const auto& [k, re] : g.entries)
                e["entries"].push_back({{"k", k}, {"re_exponent", re}});
            j["growth"].push_back(e);
        }
    }

    j["warnings"] = report.warnings;
    return j.dump(2) + "\n";
}

std::string fmt_c(Complex z) {
    std::ostringstream s;
    s.precision(12);
    s << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
    return s.str();
}

std::string render_text_report(const Report& report) {
    std::ostringstream out;
    out.precision(12);

    if (report.kind == ReportKind::pseudo4) {
        out << "fourth-order pseudo-periodic criterion\n";
        out << "  constants: ";
        for (double b : report.pseudo4_constants) out << b << " ";
        out << "\n  beta numerator:   " << report.pseudo4->numerator << "\n";
        out << "  beta denominator: " << report.pseudo4->denominator << "\n";
        out << "  ill-posed: " << (report.pseudo4->ill_posed ? "yes" : "no") << "\n";
        return out.str();
    }

    const ProblemSpec& spec = *report.spec;
    out << "problem (direction " << direction_name(spec.direction) << ")\n";
    for (const auto& row : spec.rows) {
        out << "  order " << row.order << "  " << side_name(row.side);
        if (row.side == Side::coupled) out << "  beta = " << row.beta;
        out << "\n";
    }

    const CanonicalForm& cf = *report.canonical;
    out << "canonical form: " << form_name(cf.form())
        << "  (monomial degree " << cf.monomial_degree() << ")";
    if (cf.has_bracket()) {
        out << "  W = " << cf.W() << "  X = " << fmt_c(cf.X());
        if (cf.form() == Form::IV) out << "  Y = " << cf.Y();
    }
    out << "\nclass: " << class_name(*report.label) << "\n";

    if (report.verdict) {
        const Verdict& v = *report.verdict;
        auto yn = [](bool b) { return b ? "yes" : "no "; };
        out << "verdict:\n";
        out << "  direction   conditioned  zero-bound  well-posed\n";
        out << "  +i          " << yn(v.conditioned_plus) << "          "
            << yn(v.bound_plus) << "        " << yn(v.wellposed_plus) << "\n";
        out << "  -i          " << yn(v.conditioned_minus) << "          "
            << yn(v.bound_minus) << "        " << yn(v.wellposed_minus) << "\n";
    }

    if (report.has_zero_table) {
        out << "zeros (origin zero of the monomial factor excluded):\n";
        if (!report.zeros_note.empty()) {
            out << "  " << report.zeros_note << "\n";
        } else {
            for (const auto& row : report.zero_table) {
                out << "  " << family_name(row.family) << "_" << row.k
                    << "  refined " << fmt_c(row.refined) << "  asymptotic "
                    << fmt_c(row.asymptotic) << "  error " << row.error
                    << "  residual " << row.residual << "\n";
            }
            if (report.fitted_decay_rate)
                out << "  fitted error decay rate: " << *report.fitted_decay_rate
                    << " per index\n";
        }
    }

    for (const auto& g : report.growth) {
        out << "series growth, direction " << direction_name(g.a)
            << ", t = " << g.t << " (bounded above: "
            << (g.bounded_above ? "yes" : "no") << ")\n";
        for (const auto& [k, re] : g.entries)
            out << "  k = " << k << "  Re exponent = " << re << "\n";
    }

    for (const auto& w : report.warnings) out << "warning: " << w << "\n";
    return out.str();
}

} // namespace

Report run_classify(const std::string& document, const ReportOptions& opts) {
    return analyze(document, ReportKind::classify, opts);
}

Report run_zeros(const std::string& document, const ReportOptions& opts) {
    return analyze(document, ReportKind::zeros, opts);
}

Report run_verdict(const std::string& document, const ReportOptions& opts) {
    return analyze(document, ReportKind::verdict, opts);
}

Report run_pseudo4(const std::array<double, 4>& constants) {
    Report report;
    report.kind = ReportKind::pseudo4;
    report.pseudo4_constants = constants;
    report.pseudo4 = fourth_order_pseudoperiodic(constants[0], constants[1],
                                                 constants[2], constants[3]);
    return report;
}

std::string render_report(const Report& report, OutputFormat format) {
    return format == OutputFormat::json ? render_json_report(report)
                                        : render_text_report(report);
}

} // namespace ibvp3
