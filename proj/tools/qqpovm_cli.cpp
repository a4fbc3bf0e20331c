// qqpovm: command-line front end for model files.
//
// Exit codes: 0 success, 1 validation/analysis failure, 2 usage or parse error.

#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qqpovm/errors.hpp"
#include "qqpovm/measurement.hpp"
#include "qqpovm/model_io.hpp"
#include "qqpovm/montecarlo.hpp"
#include "qqpovm/neumark.hpp"
#include "qqpovm/qq.hpp"

namespace {

using namespace qqpovm;
using Json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fmt12(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

// Rounded to 12 significant digits so JSON output carries the same precision as text.
double round12(double x) { return std::isfinite(x) ? std::strtod(fmt12(x).c_str(), nullptr) : x; }

std::string fmt_complex(Complex z) {
    if (z.imag() == 0.0) return fmt12(z.real());
    if (z.real() == 0.0) return fmt12(z.imag()) + "i";
    return fmt12(z.real()) + (z.imag() < 0 ? "-" : "+") + fmt12(std::abs(z.imag())) + "i";
}

Json json_matrix(const ComplexMatrix& m) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(Json::array({round12(m(r, c).real()), round12(m(r, c).imag())}));
        rows.push_back(std::move(row));
    }
    return rows;
}

void print_matrix(std::ostream& os, const ComplexMatrix& m, const std::string& indent) {
    for (std::size_t r = 0; r < m.rows(); ++r) {
        os << indent << "[";
        for (std::size_t c = 0; c < m.cols(); ++c) os << (c ? ", " : "") << fmt_complex(m(r, c));
        os << "]\n";
    }
}

/// Parses "1", "-2i", "i", "0.5+0.25i", "1e-3-2i".
Complex parse_complex(std::string text) {
    std::erase(text, ' ');
    if (text.empty()) throw UsageError("empty complex number");
    auto parse_real = [&](const std::string& s) {
        if (s.empty() || s == "+") return 1.0;
        if (s == "-") return -1.0;
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception&) {
            throw UsageError("cannot parse number '" + text + "'");
        }
        if (used != s.size()) throw UsageError("cannot parse number '" + text + "'");
        return v;
    };
    if (text.back() != 'i') return Complex(parse_real(text), 0.0);
    const std::string body = text.substr(0, text.size() - 1);
    std::size_t split = std::string::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    if (split == std::string::npos) return Complex(0.0, parse_real(body));
    return Complex(parse_real(body.substr(0, split)), parse_real(body.substr(split)));
}

bool use_color() {
    const char* no_color = std::getenv("NO_COLOR");
    return (no_color == nullptr || *no_color == '\0') && ::isatty(STDOUT_FILENO);
}

std::string verdict(bool ok) {
    if (!use_color()) return ok ? "pass" : "FAIL";
    return ok ? "\033[32mpass\033[0m" : "\033[31mFAIL\033[0m";
}

struct Options {
    std::string file;
    std::string format = "text";
    std::string a_name;
    std::string b_name;
    std::string emit_model_path;
    std::optional<std::string> convention;
    std::string order = "a-first";
    std::optional<std::string> state_override;
    std::size_t grid = 64;
    std::uint64_t n = 100000;
    std::uint64_t seed = 1;
    std::vector<std::uint64_t> sizes;
};

struct Context {
    ModelFile model;
    const BinaryMeasurement* a = nullptr;
    const BinaryMeasurement* b = nullptr;
    Tolerance tol;
    bool json = false;
};

Context load(const Options& opt) {
    Context ctx;
    ctx.model = load_model(opt.file);
    ctx.tol = ctx.model.tol();
    ctx.json = opt.format == "json";
    const auto& ms = ctx.model.measurements;
    ctx.a = opt.a_name.empty() ? &ms.front() : &ctx.model.measurement(opt.a_name);
    if (!opt.b_name.empty()) {
        ctx.b = &ctx.model.measurement(opt.b_name);
    } else {
        // first measurement other than A
        for (const auto& m : ms)
            if (&m != ctx.a) {
                ctx.b = &m;
                break;
            }
    }
    if (!opt.emit_model_path.empty()) {
        std::ofstream out(opt.emit_model_path);
        if (!out) throw UsageError("cannot write '" + opt.emit_model_path + "'");
        out << emit_model(ctx.model);
    }
    return ctx;
}

void require_pair(const Context& ctx) {
    if (ctx.b == nullptr) throw ModelParseError("model needs at least two measurements for this command");
}

Convention analysis_convention(const Options& opt, const Context& ctx) {
    if (opt.convention) return parse_convention(*opt.convention);
    return ctx.model.convention.value_or(Convention::Literal);
}

QuantumState analysis_state(const Options& opt, const Context& ctx) {
    if (!opt.state_override) return ctx.model.state();
    const auto& text = *opt.state_override;
    const auto comma = text.find(',');
    if (comma == std::string::npos) throw UsageError("--state-override expects alpha,beta");
    if (ctx.model.dimension != 2) throw UsageError("--state-override requires a two-dimensional model");
    try {
        return QuantumState::pure(parse_complex(text.substr(0, comma)), parse_complex(text.substr(comma + 1)));
    } catch (const InvalidStateError& e) {
        throw UsageError(std::string("--state-override: ") + e.what());
    }
}

Json table_json(const OutcomeTable& t) {
    return Json{{"order", std::string(to_string(t.order))},
                {"convention", std::string(to_string(t.convention))},
                {"p_yes_yes", round12(t.p[0][0])},
                {"p_yes_no", round12(t.p[0][1])},
                {"p_no_yes", round12(t.p[1][0])},
                {"p_no_no", round12(t.p[1][1])},
                {"normalization_defect", round12(t.normalization_defect)}};
}

void print_table(std::ostream& os, const OutcomeTable& t, const std::string& first, const std::string& second) {
    os << "order " << to_string(t.order) << " (convention " << to_string(t.convention) << ")\n";
    const char* ans[2] = {"y", "n"};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            os << "  p(" << first << ans[i] << " " << second << ans[j] << ")  " << fmt12(t.p[i][j]) << "\n";
    os << "  normalization defect  " << fmt12(t.normalization_defect) << "\n";
}

int cmd_validate(const Options& opt) {
    const Context ctx = load(opt);
    bool all_valid = true;
    Json out;
    out["dimension"] = ctx.model.dimension;
    Json ms = Json::array();
    std::ostringstream text;
    for (const auto& m : ctx.model.measurements) {
        const auto r = validate_measurement(m, ctx.tol);
        all_valid = all_valid && r.valid();
        ms.push_back(Json{{"name", m.name},
                          {"valid", r.valid()},
                          {"projective", r.projective},
                          {"hermitian", r.hermitian},
                          {"positive", r.positive},
                          {"complete", r.complete},
                          {"hermiticity_residual", round12(r.hermiticity_residual)},
                          {"min_eigenvalue", round12(r.min_eigenvalue)},
                          {"completeness_residual", round12(r.completeness_residual)},
                          {"idempotence_residual", round12(r.idempotence_residual)}});
        text << "measurement " << m.name << "\n"
             << "  hermiticity residual   " << fmt12(r.hermiticity_residual) << "  " << verdict(r.hermitian) << "\n"
             << "  min eigenvalue         " << fmt12(r.min_eigenvalue) << "  " << verdict(r.positive) << "\n"
             << "  completeness residual  " << fmt12(r.completeness_residual) << "  " << verdict(r.complete) << "\n"
             << "  idempotence residual   " << fmt12(r.idempotence_residual) << "\n"
             << "  valid                  " << (r.valid() ? "yes" : "no") << "\n"
             << "  projective             " << (r.projective ? "yes" : "no") << "\n";
    }
    out["measurements"] = std::move(ms);
    out["state_valid"] = true;  // load() rejects invalid states
    out["valid"] = all_valid;
    text << "state                    valid\n";
    if (ctx.json) std::cout << out.dump(2) << "\n";
    else std::cout << text.str();
    return all_valid ? kExitOk : kExitFailure;
}

int cmd_distribution(const Options& opt) {
    const Context ctx = load(opt);
    require_pair(ctx);
    const Convention c = analysis_convention(opt, ctx);
    const Order order = parse_order(opt.order);
    const auto t = outcome_distribution(analysis_state(opt, ctx), *ctx.a, *ctx.b, order, c, ctx.tol);
    if (ctx.json) {
        std::cout << table_json(t).dump(2) << "\n";
    } else {
        const bool a_first = order == Order::AFirst;
        print_table(std::cout, t, a_first ? ctx.a->name : ctx.b->name, a_first ? ctx.b->name : ctx.a->name);
    }
    return kExitOk;
}

int cmd_qq(const Options& opt) {
    const Context ctx = load(opt);
    require_pair(ctx);
    const Convention c = analysis_convention(opt, ctx);
    const auto r = qq_statistic(analysis_state(opt, ctx), *ctx.a, *ctx.b, c, ctx.tol);
    if (ctx.json) {
        Json out{{"convention", std::string(to_string(c))},
                 {"statistic", round12(r.statistic)},
                 {"statistic_from_probabilities", round12(r.statistic_from_probabilities)},
                 {"zero_state", r.zero_state},
                 {"coupling", round12(r.coupling)},
                 {"k_operator", json_matrix(r.k_operator)},
                 {"a_first", table_json(r.a_first)},
                 {"b_first", table_json(r.b_first)}};
        std::cout << out.dump(2) << "\n";
        return kExitOk;
    }
    std::cout << "convention                     " << to_string(c) << "\n"
              << "statistic                      " << fmt12(r.statistic) << "\n"
              << "statistic (from probabilities) " << fmt12(r.statistic_from_probabilities) << "\n"
              << "zero state                     " << (r.zero_state ? "yes" : "no") << "\n";
    if (r.k_operator.rows() == 2) std::cout << "coupling |K01|                 " << fmt12(r.coupling) << "\n";
    std::cout << "K operator\n";
    print_matrix(std::cout, r.k_operator, "  ");
    print_table(std::cout, r.a_first, ctx.a->name, ctx.b->name);
    print_table(std::cout, r.b_first, ctx.b->name, ctx.a->name);
    return kExitOk;
}

int cmd_scan(const Options& opt) {
    const Context ctx = load(opt);
    require_pair(ctx);
    const Convention c = analysis_convention(opt, ctx);
    if (opt.grid < 2) throw UsageError("--grid must be >= 2");
    if (ctx.model.dimension != 2) throw UsageError("scan requires a two-dimensional model");
    const auto pts = zero_manifold_scan(*ctx.a, *ctx.b, c, opt.grid, ctx.tol);
    if (ctx.json) {
        Json arr = Json::array();
        for (const auto& p : pts)
            arr.push_back(Json{{"theta_index", p.theta_index},
                               {"phi_index", p.phi_index},
                               {"theta", round12(p.theta)},
                               {"phi", round12(p.phi)},
                               {"statistic", round12(p.statistic)}});
        std::cout << Json{{"grid", opt.grid}, {"convention", std::string(to_string(c))}, {"count", pts.size()},
                          {"points", std::move(arr)}}
                         .dump(2)
                  << "\n";
        return kExitOk;
    }
    std::cout << "grid " << opt.grid << "x" << opt.grid << ", convention " << to_string(c) << ", " << pts.size()
              << " zero states\n";
    std::cout << "  i     j     theta            phi              statistic\n";
    for (const auto& p : pts) {
        char line[160];
        std::snprintf(line, sizeof line, "  %-5zu %-5zu %-16s %-16s %s\n", p.theta_index, p.phi_index,
                      fmt12(p.theta).c_str(), fmt12(p.phi).c_str(), fmt12(p.statistic).c_str());
        std::cout << line;
    }
    return kExitOk;
}

int cmd_max(const Options& opt) {
    const Context ctx = load(opt);
    require_pair(ctx);
    const Convention c = analysis_convention(opt, ctx);
    const auto ext = max_violation(*ctx.a, *ctx.b, c, ctx.tol);
    if (ctx.json) {
        std::cout << Json{{"convention", std::string(to_string(c))}, {"value", round12(ext.value)},
                          {"maximizer", json_matrix(ext.maximizer.rho())}}
                         .dump(2)
                  << "\n";
        return kExitOk;
    }
    std::cout << "convention       " << to_string(c) << "\n"
              << "max violation    " << fmt12(ext.value) << "\n"
              << "maximizer rho\n";
    print_matrix(std::cout, ext.maximizer.rho(), "  ");
    return kExitOk;
}

Json cert_json(const DilationCertificate& c) {
    return Json{{"passed", c.passed()},
                {"isometry_residual", round12(c.isometry_residual)},
                {"idempotence_residual", round12(c.idempotence_residual)},
                {"hermiticity_residual", round12(c.hermiticity_residual)},
                {"completeness_residual", round12(c.completeness_residual)},
                {"compression_residual", round12(c.compression_residual)},
                {"probability_residual", round12(c.probability_residual)},
                {"probability_samples", c.probability_samples}};
}

void print_cert(std::ostream& os, const std::string& name, const DilationCertificate& c) {
    os << "certificate " << name << "  " << verdict(c.passed()) << "\n"
       << "  isometry       " << fmt12(c.isometry_residual) << "\n"
       << "  idempotence    " << fmt12(c.idempotence_residual) << "\n"
       << "  hermiticity    " << fmt12(c.hermiticity_residual) << "\n"
       << "  completeness   " << fmt12(c.completeness_residual) << "\n"
       << "  compression    " << fmt12(c.compression_residual) << "\n"
       << "  probability    " << fmt12(c.probability_residual) << " (" << c.probability_samples << " states)\n";
}

int cmd_lift(const Options& opt) {
    const Context ctx = load(opt);
    require_pair(ctx);
    const auto lift = common_space_lift(*ctx.a, *ctx.b, ctx.tol);
    const auto cert_a = verify_dilation(lift.dilation_a, ctx.tol);
    const auto cert_b = verify_dilation(lift.dilation_b, ctx.tol);
    const auto check = lifted_qq_check(*ctx.a, *ctx.b, analysis_state(opt, ctx), ctx.tol);
    const bool ok = cert_a.passed() && cert_b.passed() && std::abs(check.after) <= ctx.tol.abs_eps;
    if (ctx.json) {
        std::cout << Json{{"common_dimension", lift.extended_dim},
                          {"certificate_a", cert_json(cert_a)},
                          {"certificate_b", cert_json(cert_b)},
                          {"lifted_a_yes", json_matrix(lift.lifted_a.yes.matrix)},
                          {"lifted_b_yes", json_matrix(lift.lifted_b.yes.matrix)},
                          {"before", round12(check.before)},
                          {"after", round12(check.after)},
                          {"passed", ok}}
                         .dump(2)
                  << "\n";
        return ok ? kExitOk : kExitFailure;
    }
    std::cout << "common dimension  " << lift.extended_dim << "\n";
    print_cert(std::cout, ctx.a->name, cert_a);
    print_cert(std::cout, ctx.b->name, cert_b);
    std::cout << "lifted " << ctx.a->name << " yes\n";
    print_matrix(std::cout, lift.lifted_a.yes.matrix, "  ");
    std::cout << "lifted " << ctx.b->name << " yes\n";
    print_matrix(std::cout, lift.lifted_b.yes.matrix, "  ");
    std::cout << "qq before         " << fmt12(check.before) << "\n"
              << "qq after          " << fmt12(check.after) << "\n";
    return ok ? kExitOk : kExitFailure;
}

ExperimentConfig experiment(const Options& opt, const Context& ctx) {
    require_pair(ctx);
    return ExperimentConfig{.state = analysis_state(opt, ctx),
                            .a = *ctx.a,
                            .b = *ctx.b,
                            .convention = opt.convention ? parse_convention(*opt.convention) : Convention::Sqrt,
                            .n_per_order = opt.n,
                            .seed = opt.seed};
}

int cmd_simulate(const Options& opt) {
    const Context ctx = load(opt);
    if (opt.n == 0) throw UsageError("--n must be >= 1");
    const auto r = simulate(experiment(opt, ctx));
    const bool within = std::abs(r.empirical_qq - r.analytic_qq) <= 4.0 * r.standard_error;
    if (ctx.json) {
        Json counts = Json::object();
        const char* cells[4] = {"yes_yes", "yes_no", "no_yes", "no_no"};
        for (int o = 0; o < 2; ++o) {
            Json c = Json::object();
            for (int k = 0; k < 4; ++k) c[cells[k]] = r.counts[o][k];
            counts[o == 0 ? "a_first" : "b_first"] = std::move(c);
        }
        std::cout << Json{{"n_per_order", r.n_per_order},
                          {"seed", opt.seed},
                          {"counts", std::move(counts)},
                          {"empirical_qq", round12(r.empirical_qq)},
                          {"standard_error", round12(r.standard_error)},
                          {"analytic_qq", round12(r.analytic_qq)},
                          {"within_4se", within}}
                         .dump(2)
                  << "\n";
        return kExitOk;
    }
    std::cout << "n per order      " << r.n_per_order << " (seed " << opt.seed << ")\n";
    for (int o = 0; o < 2; ++o) {
        std::cout << (o == 0 ? "a-first counts   " : "b-first counts   ") << "yy " << r.counts[o][0] << "  yn "
                  << r.counts[o][1] << "  ny " << r.counts[o][2] << "  nn " << r.counts[o][3] << "\n";
    }
    std::cout << "empirical qq     " << fmt12(r.empirical_qq) << "\n"
              << "standard error   " << fmt12(r.standard_error) << "\n"
              << "analytic qq      " << fmt12(r.analytic_qq) << "\n"
              << "within 4 SE      " << (within ? "yes" : "no") << "\n";
    return kExitOk;
}

int cmd_sweep(const Options& opt) {
    const Context ctx = load(opt);
    if (opt.sizes.empty()) throw UsageError("--sizes must list at least one size");
    const auto rows = convergence_sweep(experiment(opt, ctx), opt.sizes);
    if (ctx.json) {
        Json arr = Json::array();
        for (const auto& r : rows)
            arr.push_back(Json{{"n", r.n},
                               {"abs_error", round12(r.abs_error)},
                               {"standard_error", round12(r.standard_error)},
                               {"empirical_qq", round12(r.empirical_qq)},
                               {"analytic_qq", round12(r.analytic_qq)}});
        std::cout << Json{{"seed", opt.seed}, {"rows", std::move(arr)}}.dump(2) << "\n";
        return kExitOk;
    }
    std::cout << "  n            |empirical-analytic|  standard error\n";
    for (const auto& r : rows) {
        char line[160];
        std::snprintf(line, sizeof line, "  %-12llu %-21s %s\n", static_cast<unsigned long long>(r.n),
                      fmt12(r.abs_error).c_str(), fmt12(r.standard_error).c_str());
        std::cout << line;
    }
    std::cout << "analytic qq  " << fmt12(rows.front().analytic_qq) << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Order effects of binary POVM questions: QQ statistic, zero states, Neumark liftings"};
    app.require_subcommand(1);
    Options opt;
    app.add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--a", opt.a_name, "Name of question A (default: first measurement)");
    app.add_option("--b", opt.b_name, "Name of question B (default: second measurement)");
    app.add_option("--emit-model", opt.emit_model_path, "Write the parsed model back out to this path");

    const auto conventions = CLI::IsMember({"literal", "sqrt"});
    auto add_file = [&](CLI::App* sub) {
        sub->add_option("file", opt.file, "Model file")->required();
        sub->add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"text", "json"}));
        sub->add_option("--emit-model", opt.emit_model_path, "Write the parsed model back out to this path");
    };

    auto* validate = app.add_subcommand("validate", "Check the POVM axioms of every measurement");
    add_file(validate);

    auto* distribution = app.add_subcommand("distribution", "Sequential joint outcome probabilities");
    add_file(distribution);
    distribution->add_option("--order", opt.order)->check(CLI::IsMember({"a-first", "b-first"}));
    distribution->add_option("--convention", opt.convention)->check(conventions);

    auto* qq = app.add_subcommand("qq", "QQ statistic and operator");
    add_file(qq);
    qq->add_option("--convention", opt.convention)->check(conventions);
    qq->add_option("--state-override", opt.state_override, "Pure state amplitudes alpha,beta (e.g. i,1)");

    auto* scan = app.add_subcommand("scan", "Pure states on a Bloch grid where the statistic vanishes");
    add_file(scan);
    scan->add_option("--grid", opt.grid, "Grid steps per angle")->check(CLI::PositiveNumber);
    scan->add_option("--convention", opt.convention)->check(conventions);

    auto* max = app.add_subcommand("max", "Largest statistic over all states");
    add_file(max);
    max->add_option("--convention", opt.convention)->check(conventions);

    auto* lift = app.add_subcommand("lift", "Neumark lifting to a common space and the lifted QQ statistic");
    add_file(lift);

    auto* sim = app.add_subcommand("simulate", "Monte Carlo estimate of the statistic");
    add_file(sim);
    sim->add_option("--n", opt.n, "Respondents per order");
    sim->add_option("--seed", opt.seed);
    sim->add_option("--convention", opt.convention)->check(conventions);

    auto* sweep = app.add_subcommand("sweep", "Monte Carlo error over increasing sample sizes");
    add_file(sweep);
    sweep->add_option("--sizes", opt.sizes, "Ascending sample sizes")->delimiter(',');
    sweep->add_option("--seed", opt.seed);
    sweep->add_option("--convention", opt.convention)->check(conventions);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (validate->parsed()) return cmd_validate(opt);
        if (distribution->parsed()) return cmd_distribution(opt);
        if (qq->parsed()) return cmd_qq(opt);
        if (scan->parsed()) return cmd_scan(opt);
        if (max->parsed()) return cmd_max(opt);
        if (lift->parsed()) return cmd_lift(opt);
        if (sim->parsed()) return cmd_simulate(opt);
        if (sweep->parsed()) return cmd_sweep(opt);
    } catch (const ModelParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const DimensionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitUsage;
}
