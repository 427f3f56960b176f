#include "ras/report.hpp"

#include "ras/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace ras {

Interval default_window(Family family) {
    switch (family) {
    case Family::translation: return {-3.0, 3.0};
    case Family::radial: return {0.1, 4.0};
    case Family::warped: return {-2.0, 2.0};
    }
    return {-1.0, 1.0};
}

std::vector<double> parse_real_list(std::string_view text) {
    std::vector<double> out;
    std::size_t pos = 0;
    for (;;) {
        while (pos < text.size() && text[pos] == ' ') ++pos;
        double v = 0.0;
        const char* first = text.data() + pos;
        const auto res = std::from_chars(first, text.data() + text.size(), v);
        if (res.ec != std::errc() || !std::isfinite(v)) throw ParseError(pos, {"number"}, "expected a real number");
        out.push_back(v);
        pos = static_cast<std::size_t>(res.ptr - text.data());
        while (pos < text.size() && text[pos] == ' ') ++pos;
        if (pos == text.size()) break;
        if (text[pos] != ',') throw ParseError(pos, {","}, "expected ',' between numbers");
        ++pos;
    }
    return out;
}

std::string format_real(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

namespace {

Json real_json(double v) { return std::isfinite(v) ? Json(v) : Json(format_real(v)); }

Json check_json(const ResidualReport& r) {
    Json j;
    j["name"] = r.name();
    j["sup"] = real_json(r.sup());
    j["rms"] = real_json(r.rms());
    j["tol"] = r.tol();
    j["pass"] = r.pass();
    j["samples"] = r.samples().size();
    j["skipped"] = r.skipped();
    return j;
}

struct Setup {
    Signature sig;
    std::optional<TranslationDirection> direction;
    int m = 0;
    Interval window;
    double base = 0.0;
    int grid = 5;
};

void require_variable(const Profile& p, Family family, const char* what) {
    const Variable want = family == Family::radial ? Variable::r : Variable::xi;
    if (p.variable() != Variable::none && p.variable() != want)
        throw PreconditionError(std::string(what) + " '" + p.label() + "' is written in " +
                                std::string(variable_name(p.variable())) + " but the " +
                                std::string(family_name(family)) + " family uses " + std::string(variable_name(want)));
}

Setup prepare(const RunConfig& cfg) {
    if (cfg.n < 3) throw PreconditionError("n must be at least 3");
    if (cfg.samples < 2) throw PreconditionError("samples must be at least 2");
    Setup s{.sig = cfg.signature ? Signature::parse(*cfg.signature) : Signature::euclidean(cfg.n),
            .direction = std::nullopt,
            .m = 0,
            .window = cfg.window.value_or(default_window(cfg.family)),
            .base = 0.0,
            .grid = cfg.grid.value_or(cfg.family == Family::warped ? 3 : 5)};
    if (s.sig.dim() != cfg.n) throw PreconditionError("signature length differs from n");
    if (s.grid < 1) throw PreconditionError("grid must be positive");
    if (!(s.window.width() > 0.0)) throw PreconditionError("window must have positive width");

    if (cfg.family == Family::radial) {
        if (!s.sig.is_euclidean()) throw PreconditionError("the radial family needs a Euclidean signature");
        if (cfg.alphas) throw PreconditionError("the radial family takes no alphas");
    } else {
        std::vector<double> alphas(static_cast<std::size_t>(cfg.n), 0.0);
        alphas[0] = 1.0;
        if (cfg.alphas) alphas = *cfg.alphas;
        if (static_cast<int>(alphas.size()) != cfg.n) throw PreconditionError("alphas length differs from n");
        s.direction = TranslationDirection(alphas, s.sig);
    }

    if (cfg.family == Family::warped) {
        s.m = cfg.m.value_or(2);
        if (s.m < 1) throw PreconditionError("the warped family needs m >= 1");
    } else if (cfg.m && *cfg.m != 0) {
        throw PreconditionError("m applies to the warped family only");
    }
    s.base = cfg.base.value_or(default_base(cfg.family, s.window));
    return s;
}

std::vector<Point> in_window(const SolitonData& sd, std::vector<Point> pts) {
    std::vector<Point> out;
    for (Point& p : pts) {
        const Point b(std::vector<double>(p.coords().begin(), p.coords().begin() + sd.n));
        if (sd.window.contains(sd.invariant(b))) out.push_back(std::move(p));
    }
    if (out.empty()) throw DomainViolation("no grid point maps into the sampling window");
    return out;
}

std::vector<Point> base_points(const SolitonData& sd, int grid) {
    if (sd.family == Family::radial) {
        const double lo = std::sqrt(std::max(sd.window.lo, 0.0));
        const double hi = std::sqrt(std::max(sd.window.hi, 0.0));
        double r0 = std::max(0.3, lo);
        double r1 = std::min(1.5, hi);
        if (r0 >= r1) {
            r0 = lo;
            r1 = hi;
        }
        return in_window(sd, shell_grid(sd.n, r0, r1, 2 * grid - 1));
    }
    return in_window(sd, cube_grid(sd.n, -1.0, 1.0, grid));
}

RunOutcome evaluate(const char* command, const RunConfig& cfg, const Setup& setup, const SolitonData& sd) {
    const std::vector<double> ts = setup.window.grid(cfg.samples);
    const std::vector<Point> pts = base_points(sd, setup.grid);
    const WarpedSpec spec{.n = sd.n, .m = std::max(sd.m, 1), .lambda_F = cfg.lambda_F, .flat_fiber = true};

    std::vector<ResidualReport> checks;
    switch (sd.family) {
    case Family::translation:
        checks.push_back(residual_system_translation(sd, ts, cfg.tol_system));
        break;
    case Family::radial:
        checks.push_back(residual_system_radial(sd, ts, cfg.tol_system));
        break;
    case Family::warped:
        checks.push_back(residual_system_warped(sd, spec, ts, cfg.tol_system));
        checks.push_back(rho_consistency_warped(sd, spec, ts, cfg.tol_system));
        break;
    }
    const ResidualReport system = checks.front();

    if (sd.family == Family::warped) {
        checks.push_back(residual_pde_warped(sd.phi_field(), sd.warping_field(), sd.potential_field(), sd.rho_field(),
                                             sd.signature, spec, pts, cfg.tol_pde));
        if (cfg.lambda_F == 0.0)
            checks.push_back(residual_full_tensor(sd, in_window(sd, cube_grid(sd.n + sd.m, -1.0, 1.0, setup.grid)), spec,
                                                  cfg.tol_tensor));
    } else {
        checks.push_back(residual_pde_conformal(sd.phi_field(), sd.potential_field(), sd.rho_field(), sd.signature, pts,
                                                cfg.tol_pde));
        checks.push_back(residual_full_tensor(sd, pts, std::nullopt, cfg.tol_tensor));
    }

    Json rep;
    rep["command"] = command;
    rep["family"] = family_name(sd.family);
    rep["profile"] = cfg.profile;
    rep["n"] = sd.n;
    rep["m"] = sd.m;
    rep["signature"] = sd.signature.to_string();
    rep["alphas"] = sd.direction ? Json(sd.direction->alphas()) : Json(nullptr);
    rep["eps_i0"] = sd.eps_i0();
    rep["c"] = cfg.c;
    rep["k"] = cfg.k;
    rep["base"] = setup.base;
    rep["lambda_F"] = cfg.lambda_F;
    rep["window"] = {setup.window.lo, setup.window.hi};
    rep["working_interval"] = {sd.window.lo, sd.window.hi};
    rep["checks"] = Json::array();
    bool pass = true;
    int skipped = 0;
    for (const auto& r : checks) {
        rep["checks"].push_back(check_json(r));
        pass = pass && r.pass();
        skipped += r.skipped();
    }
    rep["skipped_points"] = skipped;
    rep["pass"] = pass;

    static const char* kColumns[] = {"t", "phi", "phi_d1", "phi_d2", "f", "f_d1", "rho", "r1", "r2", "r3"};
    Json table;
    table["columns"] = Json::array();
    for (const char* c : kColumns) table["columns"].push_back(c);
    table["rows"] = Json::array();

    std::ostringstream csv;
    for (std::size_t i = 0; i < std::size(kColumns); ++i) csv << (i ? "," : "") << kColumns[i];
    csv << '\n';

    std::size_t next = 0;
    for (double t : ts) {
        const Dual2 p = sd.phi.eval2(t);
        std::vector<std::optional<double>> row{t, p.value, p.d1, p.d2};
        std::optional<double> r1, r2, r3;
        const bool sampled = next < system.samples().size() && system.samples()[next].location.front() == t;
        if (sampled) {
            const auto& comp = system.samples()[next++].components;
            r1 = comp[0];
            r2 = comp[1];
            if (comp.size() > 2) r3 = comp[2];
            const Dual2 f = sd.potential.eval2(t);
            row.push_back(f.value);
            row.push_back(f.d1);
            row.push_back(sd.rho(t));
        } else {
            row.resize(row.size() + 3);
        }
        row.push_back(r1);
        row.push_back(r2);
        row.push_back(r3);

        Json jr = Json::array();
        for (std::size_t i = 0; i < row.size(); ++i) {
            jr.push_back(row[i] ? real_json(*row[i]) : Json(nullptr));
            csv << (i ? "," : "") << (row[i] ? format_real(*row[i]) : std::string());
        }
        csv << '\n';
        table["rows"].push_back(std::move(jr));
    }
    rep["samples"] = std::move(table);
    return {std::move(rep), csv.str(), pass};
}

} // namespace

RunOutcome run_construct(const RunConfig& cfg) {
    const Setup s = prepare(cfg);
    const Profile phi = resolve_profile(cfg.profile);
    require_variable(phi, cfg.family, "profile");
    const IntegrationConstants ic{.c = cfg.c, .k = cfg.k, .base = s.base};
    if (cfg.lambda_F != 0.0) throw PreconditionError("construction assumes a Ricci-flat fiber (lambda_F = 0)");

    switch (cfg.family) {
    case Family::translation:
        return evaluate("construct", cfg, s, construct_translation(phi, cfg.n, *s.direction, ic, s.window, cfg.tol_quadrature));
    case Family::radial:
        return evaluate("construct", cfg, s, construct_radial(phi, cfg.n, ic, s.window, cfg.tol_quadrature));
    case Family::warped:
        return evaluate("construct", cfg, s,
                        construct_warped(phi, cfg.n, s.m, *s.direction, ic, s.window, cfg.tol_quadrature));
    }
    throw PreconditionError("unknown family");
}

RunOutcome run_verify(const RunConfig& cfg) {
    const Setup s = prepare(cfg);
    const Interval span = working_interval(s.window, s.base);
    auto load = [&](const std::optional<std::string>& text, const char* what) {
        if (!text) throw PreconditionError(std::string("verify needs --") + what);
        Profile p = resolve_profile(*text);
        require_variable(p, cfg.family, what);
        return p;
    };
    const Profile phi = load(cfg.profile, "profile").validated_on(span);
    const Profile rho = load(cfg.rho, "rho");

    if (cfg.family == Family::warped) {
        const Profile h = load(cfg.h, "h");
        const Profile warping =
            cfg.f ? load(cfg.f, "f") : Profile([phi](const Dual2& t) { return recip(phi.eval(t)); }, "1/phi");
        return evaluate("verify", cfg, s, SolitonData::assemble_warped(phi, warping, h, rho, *s.direction, s.m, span));
    }
    if (cfg.h) throw PreconditionError("--h applies to the warped family only");
    const Profile f = load(cfg.f, "f");
    return evaluate("verify", cfg, s, SolitonData::assemble_conformal(cfg.family, phi, f, rho, s.sig, s.direction, span));
}

RunOutcome run_gallery(const GalleryConfig& cfg) {
    struct Case {
        std::string name;
        RunConfig run;
    };
    std::vector<Case> cases;
    for (int n : {3, 4}) {
        RunConfig a;
        a.family = Family::translation;
        a.profile = "paperA";
        a.n = n;
        cases.push_back({"A", a});
    }
    RunConfig b;
    b.family = Family::warped;
    b.profile = "paperB";
    b.m = 2;
    cases.push_back({"B", b});
    RunConfig c;
    c.family = Family::radial;
    c.profile = "paperC";
    cases.push_back({"C", c});

    if (cfg.signature || cfg.alphas) {
        const int len = cfg.signature ? static_cast<int>(cfg.signature->size()) : static_cast<int>(cfg.alphas->size());
        if (cfg.signature && cfg.alphas && cfg.alphas->size() != cfg.signature->size())
            throw PreconditionError("gallery: --signature and --alphas lengths differ");
        bool applied = false;
        for (Case& k : cases)
            if (k.name == "A" && k.run.n == len) {
                k.run.signature = cfg.signature;
                k.run.alphas = cfg.alphas;
                applied = true;
            }
        if (!applied) throw PreconditionError("gallery: --signature/--alphas must have length 3 or 4 (case A)");
    }
    if (cfg.tol) {
        if (!(*cfg.tol >= 0.0)) throw PreconditionError("gallery: --tol must be non-negative");
        for (Case& k : cases) k.run.tol_system = k.run.tol_pde = k.run.tol_tensor = *cfg.tol;
    }

    Json rep;
    rep["command"] = "gallery";
    rep["cases"] = Json::array();
    bool pass = true;
    Json first_failure = nullptr;
    for (const Case& k : cases) {
        RunOutcome o = run_construct(k.run);
        o.report.erase("samples");
        Json entry;
        entry["case"] = k.name;
        entry["report"] = std::move(o.report);
        rep["cases"].push_back(std::move(entry));
        if (!o.pass && first_failure.is_null())
            first_failure = k.name + " (" + std::string(family_name(k.run.family)) + ", n=" + std::to_string(k.run.n) + ")";
        pass = pass && o.pass;
    }
    rep["pass"] = pass;
    rep["first_failure"] = first_failure;
    return {std::move(rep), std::string(), pass};
}

namespace {

std::string sci(const Json& v) {
    if (!v.is_number()) return v.get<std::string>();
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v.get<double>());
    return buf;
}

void print_checks(const Json& rep, std::ostream& out, const std::string& indent) {
    char line[160];
    std::snprintf(line, sizeof line, "%s%-20s %-10s %-10s %-10s %s\n", indent.c_str(), "check", "sup", "rms", "tol", "result");
    out << line;
    for (const Json& c : rep["checks"]) {
        std::snprintf(line, sizeof line, "%s%-20s %-10s %-10s %-10s %s\n", indent.c_str(),
                      c["name"].get<std::string>().c_str(), sci(c["sup"]).c_str(), sci(c["rms"]).c_str(),
                      sci(c["tol"]).c_str(), c["pass"].get<bool>() ? "PASS" : "FAIL");
        out << line;
    }
}

std::string header(const Json& rep) {
    std::string s = rep["family"].get<std::string>() + "  profile=" + rep["profile"].get<std::string>() +
                    "  n=" + std::to_string(rep["n"].get<int>()) + "  m=" + std::to_string(rep["m"].get<int>()) +
                    "  signature=" + rep["signature"].get<std::string>() +
                    "  eps_i0=" + format_real(rep["eps_i0"].get<double>());
    return s;
}

} // namespace

void print_summary(const Json& report, std::ostream& out) {
    if (report["command"] == "gallery") {
        for (const Json& k : report["cases"]) {
            const Json& r = k["report"];
            out << "case " << k["case"].get<std::string>() << ": " << header(r) << "  "
                << (r["pass"].get<bool>() ? "PASS" : "FAIL") << '\n';
            print_checks(r, out, "    ");
        }
        if (report["pass"].get<bool>())
            out << "gallery: PASS\n";
        else
            out << "gallery: FAIL, first failing case " << report["first_failure"].get<std::string>() << '\n';
        return;
    }
    out << header(report) << '\n';
    print_checks(report, out, "  ");
    out << "skipped points: " << report["skipped_points"].get<int>() << '\n';
    out << "result: " << (report["pass"].get<bool>() ? "PASS" : "FAIL") << '\n';
}

} // namespace ras
