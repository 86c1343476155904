#include "eisgeo/cli.hpp"
#include "eisgeo/cache.hpp"
#include "eisgeo/errors.hpp"
#include "eisgeo/hecke.hpp"
#include "eisgeo/series.hpp"
#include "eisgeo/verify.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <sstream>

namespace eisgeo {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

namespace {

Json int_json(const Int& x) {
    if (x.fits_slong_p()) return x.get_si();
    return x.get_str();
}

Json scalar_json(const Scalar& s) {
    if (s.is_exact()) {
        const Rational& q = s.rational();
        return Json{{"num", int_json(q.get_num())}, {"den", int_json(q.get_den())}};
    }
    auto z = s.complex();
    return Json::array({z.real(), z.imag()});
}

Json form_json(const QuadForm& f) { return Json::array({int_json(f.a), int_json(f.b), int_json(f.c)}); }

Json mat_json(const Mat2& m) { return Json::array({int_json(m.a), int_json(m.b), int_json(m.c), int_json(m.d)}); }

Json character_json(const ClassCharacter& chi, int index) {
    return Json{{"index", index}, {"order", chi.order}, {"exponents", chi.exponent}, {"totally_odd", chi.totally_odd}};
}

Int parse_D(const std::string& s) {
    Int D;
    if (s.empty() || D.set_str(s, 10) != 0) throw CLI::ValidationError("--D", "not an integer: " + s);
    return D;
}

QuadForm parse_form(const std::string& s) {
    std::vector<Int> v;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, ',')) {
        Int x;
        if (x.set_str(part, 10) != 0) throw CLI::ValidationError("--form", "not an integer triple: " + s);
        v.push_back(x);
    }
    if (v.size() != 3) throw CLI::ValidationError("--form", "expected a,b,c");
    return {v[0], v[1], v[2]};
}

Cache make_cache(const RunConfig& c) {
    if (c.no_cache) return Cache();
    return Cache(c.cache_dir.value_or(Cache::default_dir()));
}

void emit(const Json& j, const RunConfig& c, std::ostream& out) {
    if (c.format == OutputFormat::json) {
        out << j.dump(2) << "\n";
        return;
    }
    // flat key/value rendering of the top level; arrays and objects stay JSON
    for (const auto& [k, v] : j.items()) {
        std::string val = v.is_string() ? v.get<std::string>() : v.dump();
        if (c.format == OutputFormat::csv) out << k << "," << (val.find(',') == std::string::npos ? val : "\"" + val + "\"") << "\n";
        else out << k << ": " << val << "\n";
    }
}

const ClassCharacter& pick_odd(const std::vector<ClassCharacter>& odd, const RunConfig& c, const FieldData& F) {
    if (odd.empty())
        throw NoAdmissibleCharacter("no admissible character: Q(sqrt " + F.D.get_str() +
                                    ") has no totally odd class group character");
    if (c.character < 0 || c.character >= static_cast<int>(odd.size()))
        throw CLI::ValidationError("--character", "index out of range, " + std::to_string(odd.size()) + " odd characters");
    return odd[c.character];
}

Algorithm parse_algorithm(const std::string& a) { return a == "enum" ? Algorithm::enumerate : Algorithm::cycle; }

int cmd_field(const RunConfig& c, std::ostream& out, std::ostream& err) {
    auto [F, G] = make_cache(c).field(parse_D(c.D), err);
    Json j{{"schema_version", kSchemaVersion},
           {"D", int_json(F.D)},
           {"d_F", int_json(F.dF)},
           {"fundamental_unit", F.eps.str()},
           {"unit_norm", F.unit_norm},
           {"totally_positive_unit", F.eps_plus.str()},
           {"lambda", F.lambda.str()},
           {"narrow_class_number", G.size()}};
    emit(j, c, out);
    return kExitOk;
}

int cmd_classgroup(const RunConfig& c, std::ostream& out, std::ostream& err) {
    auto [F, G] = make_cache(c).field(parse_D(c.D), err);
    Json classes = Json::array();
    for (int i = 0; i < G.size(); ++i) classes.push_back({{"index", i}, {"form", form_json(G.class_reps[i])}, {"order", G.order(i)}});
    Json j{{"schema_version", kSchemaVersion}, {"d_F", int_json(F.dF)}, {"narrow_class_number", G.size()},
           {"classes", classes}, {"table", G.table}, {"sqrt_dF_class", G.class_of_principal_sqrt_dF}};
    emit(j, c, out);
    return kExitOk;
}

int cmd_chars(const RunConfig& c, std::ostream& out, std::ostream& err) {
    auto [F, G] = make_cache(c).field(parse_D(c.D), err);
    Json all = Json::array(), odd = Json::array();
    int i = 0, k = 0;
    for (const ClassCharacter& chi : characters(G)) {
        all.push_back(character_json(chi, i++));
        if (chi.totally_odd) odd.push_back(character_json(chi, k++));
    }
    Json j{{"schema_version", kSchemaVersion}, {"d_F", int_json(F.dF)}, {"characters", all}, {"totally_odd", odd}};
    emit(j, c, out);
    return kExitOk;
}

int cmd_rmpoints(const RunConfig& c, std::ostream& out, std::ostream& err) {
    auto [F, G] = make_cache(c).field(parse_D(c.D), err);
    Json j{{"schema_version", kSchemaVersion}, {"d_F", int_json(F.dF)}, {"p", c.p}};
    long r;
    try {
        r = c.r ? *c.r : choose_r(F, c.p).r;
    } catch (const InertPrime&) {
        j["inert"] = true;
        j["points"] = Json::array();
        emit(j, c, out);
        return kExitOk;
    }
    j["inert"] = false;
    j["r"] = r;
    Json pts = Json::array();
    auto forms = make_cache(c).rm_forms(F, G, c.p, r, err);
    for (int i = 0; i < G.size(); ++i) {
        const auto& [fp, fm] = forms[i];
        pts.push_back({{"class", i},
                       {"plus", {{"form", form_json(fp)}, {"w", fp.first_root().str()}}},
                       {"minus", {{"form", form_json(fm)}, {"w", fm.first_root().str()}}}});
    }
    j["points"] = pts;
    emit(j, c, out);
    return kExitOk;
}

int cmd_intersect(const RunConfig& c, std::ostream& out, std::ostream&) {
    if (!is_odd_prime(c.p)) throw DomainError("--p must be an odd prime");
    QuadForm f = parse_form(c.form).primitive();
    ClosedGeodesic Q = make_closed_geodesic(f, c.p);
    Json j{{"schema_version", kSchemaVersion}, {"form", form_json(Q.form)}, {"p", c.p}, {"disc", int_json(Q.disc())},
           {"w", Q.w().str()}, {"gamma", mat_json(Q.gamma)}, {"n", c.n}};
    auto total = [&](Algorithm alg) {
        long s = 0;
        for (const ClosedGeodesic& g : hecke_translate(Q, c.n)) s += intersect_winding(g, alg);
        return s;
    };
    int code = kExitOk;
    if (c.algorithm == "both") {
        long a = total(Algorithm::cycle), b = total(Algorithm::enumerate);
        j["intersection"] = {{"cycle", a}, {"enum", b}};
        j["agree"] = a == b;
        if (a != b) code = kExitMismatch;
    } else {
        j["intersection"] = total(parse_algorithm(c.algorithm));
    }
    emit(j, c, out);
    return code;
}

Json series_json(const QSeries& S, int index) {
    Json coeffs = Json::array(), pairings = Json::array();
    for (const Scalar& a : S.coeffs) coeffs.push_back(scalar_json(a));
    for (const Scalar& a : S.pairings) pairings.push_back(scalar_json(a));
    Json j{{"schema_version", kSchemaVersion},
           {"d_F", int_json(S.dF)},
           {"p", S.p},
           {"inert", S.inert},
           {"character", character_json(S.psi, index)},
           {"kappa", S.kappa},
           {"convention_sign", S.convention_sign},
           {"coefficient_factor", kCoefficientFactor}};
    if (!S.inert) {
        j["r"] = S.r;
        j["euler_factor"] = scalar_json(S.euler_factor_p);
        j["L_value"] = scalar_json(S.raw_L);
    }
    j["constant"] = scalar_json(S.constant);
    j["coeffs"] = coeffs;
    j["pairings"] = pairings;
    return j;
}

SeriesOptions series_options(const RunConfig& c) {
    SeriesOptions o;
    o.N = c.N;
    o.threads = c.threads;
    o.both = c.algorithm == "both";
    o.algorithm = parse_algorithm(c.algorithm);
    o.r = c.r;
    return o;
}

int cmd_series(const RunConfig& c, std::ostream& out, std::ostream& err) {
    auto [F, G] = make_cache(c).field(parse_D(c.D), err);
    auto odd = odd_characters(G);
    const ClassCharacter& psi = pick_odd(odd, c, F);
    QSeries S = diagonal_restriction(F, G, psi, c.p, series_options(c));
    if (c.format == OutputFormat::csv) {
        out << "n,a_n,pairing\n0," << S.constant.str() << ",\n";
        for (long n = 1; n <= S.N(); ++n) out << n << "," << S.a(n).str() << "," << S.pairings[n - 1].str() << "\n";
        return kExitOk;
    }
    if (c.format == OutputFormat::text) {
        out << "d_F = " << S.dF.get_str() << ", p = " << S.p << (S.inert ? " (inert)" : ", r = " + std::to_string(S.r)) << "\n";
        out << "constant " << S.constant.str() << "\n";
        for (long n = 1; n <= S.N(); ++n) out << "a_" << n << " = " << S.a(n).str() << "\n";
        return kExitOk;
    }
    Json j = series_json(S, c.character);
    if (!S.inert) {
        try {
            ModularityReport rep = modularity_check(S);
            j["modularity"] = {{"ok", rep.ok}, {"detail", rep.detail}};
        } catch (const NotApplicable&) {
            j["modularity"] = nullptr;
        }
    }
    emit(j, c, out);
    return kExitOk;
}

Json checks_json(const std::vector<CheckResult>& checks, bool& ok) {
    Json arr = Json::array();
    ok = true;
    for (const CheckResult& r : checks) {
        arr.push_back({{"check", r.name}, {"ok", r.ok}, {"detail", r.detail}});
        ok = ok && r.ok;
    }
    return arr;
}

int cmd_verify(const RunConfig& c, std::ostream& out, std::ostream& err) {
    auto [F, G] = make_cache(c).field(parse_D(c.D), err);
    auto odd = odd_characters(G);
    const ClassCharacter& psi = pick_odd(odd, c, F);
    VerifyOptions o;
    o.N = c.N;
    o.threads = c.threads;
    o.both = c.algorithm == "both";
    std::vector<CheckResult> checks;
    try {
        checks = verify_series(F, G, psi, c.p, o);
    } catch (const VerificationMismatch& e) {
        checks.push_back({"dual algorithm", false, e.what()});
    }
    bool ok;
    Json j{{"schema_version", kSchemaVersion}, {"d_F", int_json(F.dF)}, {"p", c.p}, {"N", c.N}};
    j["checks"] = checks_json(checks, ok);
    j["ok"] = ok;
    if (c.format == OutputFormat::json) {
        emit(j, c, out);
    } else {
        for (const CheckResult& r : checks) out << (r.ok ? "PASS " : "FAIL ") << r.name << ": " << r.detail << "\n";
    }
    return ok ? kExitOk : kExitMismatch;
}

int cmd_verify_analytic(const RunConfig& c, std::ostream& out, std::ostream&) {
    QuadratureConfig cfg;
    cfg.extended = c.precision == "extended";
    auto checks = verify_analytic(cfg);
    bool ok;
    Json j{{"schema_version", kSchemaVersion}, {"precision", c.precision}};
    j["checks"] = checks_json(checks, ok);
    j["ok"] = ok;
    if (c.format == OutputFormat::json) {
        emit(j, c, out);
    } else {
        for (const CheckResult& r : checks) out << (r.ok ? "PASS " : "FAIL ") << r.name << ": " << r.detail << "\n";
    }
    return ok ? kExitOk : kExitMismatch;
}

} // namespace

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
    try {
        if (c.command == "field") return cmd_field(c, out, err);
        if (c.command == "classgroup") return cmd_classgroup(c, out, err);
        if (c.command == "chars") return cmd_chars(c, out, err);
        if (c.command == "rmpoints") return cmd_rmpoints(c, out, err);
        if (c.command == "intersect") return cmd_intersect(c, out, err);
        if (c.command == "series") return cmd_series(c, out, err);
        if (c.command == "verify") return cmd_verify(c, out, err);
        if (c.command == "verify-analytic") return cmd_verify_analytic(c, out, err);
        err << "error: unknown command '" << c.command << "'\n";
        return kExitUsage;
    } catch (const CLI::ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const VerificationMismatch& e) {
        err << "verification mismatch: " << e.what() << "\n";
        return kExitMismatch;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return kExitDomain;
    }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Diagonal restrictions of Hilbert Eisenstein series via closed geodesics", "eisgeo"};
    app.require_subcommand(1);
    RunConfig c;
    std::string format = "json";
    std::string cache_dir;

    auto common = [&](CLI::App* s) {
        s->add_option("--cache-dir", cache_dir, "cache directory");
        s->add_flag("--no-cache", c.no_cache, "recompute everything");
        s->add_option("--format", format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
    };
    auto field_opts = [&](CLI::App* s) {
        s->add_option("--D", c.D, "squarefree D > 1, field Q(sqrt D)")->required();
        common(s);
    };
    auto level_opts = [&](CLI::App* s) {
        field_opts(s);
        s->add_option("--p", c.p, "level")->required();
        s->add_option("--r", c.r, "square root of d_F modulo 4p");
    };
    auto series_opts = [&](CLI::App* s) {
        level_opts(s);
        s->add_option("--character", c.character, "index among the totally odd characters");
        s->add_option("--N", c.N, "truncation")->check(CLI::PositiveNumber);
        s->add_option("--algorithm", c.algorithm)->check(CLI::IsMember({"cycle", "enum", "both"}));
        s->add_option("--threads", c.threads)->check(CLI::PositiveNumber);
    };

    field_opts(app.add_subcommand("field", "field invariants"));
    field_opts(app.add_subcommand("classgroup", "narrow class group"));
    field_opts(app.add_subcommand("chars", "class group characters"));
    level_opts(app.add_subcommand("rmpoints", "RM points of level p"));
    auto* inter = app.add_subcommand("intersect", "intersection of a closed geodesic with the imaginary axis");
    inter->add_option("--form", c.form, "a,b,c")->required();
    inter->add_option("--p", c.p)->required();
    inter->add_option("--n", c.n, "Hecke index")->check(CLI::PositiveNumber);
    inter->add_option("--algorithm", c.algorithm)->check(CLI::IsMember({"cycle", "enum", "both"}));
    inter->add_option("--format", format)->check(CLI::IsMember({"json", "csv", "text"}));
    series_opts(app.add_subcommand("series", "q-expansion of the diagonal restriction"));
    series_opts(app.add_subcommand("verify", "invariance, modularity and dual-algorithm checks"));
    auto* va = app.add_subcommand("verify-analytic", "numeric checks of the archimedean integrals");
    va->add_option("--precision", c.precision)->check(CLI::IsMember({"double", "extended"}));
    va->add_option("--format", format)->check(CLI::IsMember({"json", "csv", "text"}));

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }
    c.command = app.get_subcommands().front()->get_name();
    c.format = format == "csv" ? OutputFormat::csv : format == "text" ? OutputFormat::text : OutputFormat::json;
    if (!cache_dir.empty()) c.cache_dir = cache_dir;
    return run(c, out, err);
}

} // namespace eisgeo
