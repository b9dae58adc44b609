#include "parabolica/cli.hpp"

#include "parabolica/bundle.hpp"
#include "parabolica/curvature.hpp"
#include "parabolica/errors.hpp"
#include "parabolica/spectral.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <map>
#include <ostream>
#include <set>

namespace parabolica::cli {

namespace {

// ---------------------------------------------------------------------------
// Token helpers

const std::map<std::string, Command> command_names = {
    {"analyze", Command::Analyze},       {"curvature", Command::Curvature}, {"spectral", Command::Spectral},
    {"paper-suite", Command::PaperSuite}, {"dump-roots", Command::DumpRoots},
};

std::string command_name(Command c) {
    for (const auto& [name, cmd] : command_names)
        if (cmd == c) return name;
    return "?";
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const auto pos = s.find(sep, start);
        out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) return out;
        start = pos + 1;
    }
}

template <class T>
T parse_number(std::string_view text, int pos, const char* what) {
    T v{};
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (text.empty() || ec != std::errc() || ptr != end)
        throw ParseError(std::string("expected ") + what + ", got '" + std::string(text) + "'", pos);
    return v;
}

double parse_real(std::string_view text, int pos, const char* what) {
    const double v = parse_number<double>(text, pos, what);
    if (!std::isfinite(v)) throw ParseError(std::string(what) + " must be finite", pos);
    return v;
}

std::vector<long> parse_int_list(std::string_view text, int pos, const char* what) {
    std::vector<long> out;
    if (text.empty() || text == "none") return out;
    for (auto part : split(text, ',')) out.push_back(parse_number<long>(part, pos, what));
    return out;
}

std::string format_real(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    ensure(ec == std::errc(), "number formatting failed");
    return std::string(buf, ptr);
}

template <class T>
std::string join(const std::vector<T>& v, const std::function<std::string(const T&)>& f) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + f(v[i]);
    return s;
}

// ---------------------------------------------------------------------------
// Flag table

enum class FlagKind { Value, Switch };

struct FlagInfo {
    FlagKind kind;
    std::set<Command> commands;
};

const std::set<Command> all_commands = {Command::Analyze, Command::Curvature, Command::Spectral,
                                        Command::PaperSuite, Command::DumpRoots};
const std::set<Command> spectral_commands = {Command::Analyze, Command::Spectral};

const std::map<std::string, FlagInfo> flag_table = {
    {"type", {FlagKind::Value, {Command::Analyze, Command::Curvature, Command::DumpRoots}}},
    {"parabolic", {FlagKind::Value, {Command::Analyze, Command::Curvature, Command::DumpRoots}}},
    {"weight", {FlagKind::Value, {Command::Analyze, Command::Curvature}}},
    {"kahler", {FlagKind::Value, {Command::Analyze, Command::Curvature}}},
    {"line", {FlagKind::Value, {Command::Curvature}}},
    {"dim", {FlagKind::Value, spectral_commands}},
    {"modes", {FlagKind::Value, spectral_commands}},
    {"profile", {FlagKind::Value, spectral_commands}},
    {"side", {FlagKind::Value, spectral_commands}},
    {"hym", {FlagKind::Value, spectral_commands}},
    {"kappa", {FlagKind::Value, spectral_commands}},
    {"report", {FlagKind::Value, all_commands}},
    {"json", {FlagKind::Switch, all_commands}},
    {"csv", {FlagKind::Switch, all_commands}},
    {"quiet", {FlagKind::Switch, all_commands}},
};

struct RawFlag {
    std::string value;
    int flag_pos;
    int value_pos;
};

void parse_profile(std::string_view text, int pos, SpectralRequest& sr) {
    const auto colon = text.find(':');
    const auto kind = text.substr(0, colon);
    if (kind != "point" && kind != "subtorus")
        throw ParseError("profile kind must be 'point' or 'subtorus', got '" + std::string(kind) + "'", pos);
    bool have_s = false;
    bool have_k = false;
    sr.codim = 0;
    sr.offset = 0.0;
    if (colon != std::string_view::npos) {
        for (auto item : split(text.substr(colon + 1), ',')) {
            const auto eq = item.find('=');
            if (eq == std::string_view::npos)
                throw ParseError("profile parameter '" + std::string(item) + "' is not key=value", pos);
            const auto key = item.substr(0, eq);
            const auto val = item.substr(eq + 1);
            if (key == "s") {
                sr.s = parse_real(val, pos, "profile exponent s");
                have_s = true;
            } else if (key == "offset") {
                sr.offset = parse_real(val, pos, "profile offset");
            } else if (key == "k" && kind == "subtorus") {
                sr.codim = parse_number<std::size_t>(val, pos, "codimension k");
                have_k = true;
            } else {
                throw ParseError("unknown profile parameter '" + std::string(key) + "'", pos);
            }
        }
    }
    if (!have_s) throw ParseError("profile needs s=<exponent>", pos);
    if (!(sr.s > 0.0)) throw ParseError("profile exponent s must be positive", pos);
    if (kind == "subtorus" && (!have_k || sr.codim == 0))
        throw ParseError("subtorus profile needs k=<codimension> with k >= 1", pos);
}

}  // namespace

// ---------------------------------------------------------------------------

AnalysisRequest parse_request(std::span<const std::string> tokens) {
    if (tokens.empty()) throw ParseError("missing subcommand", 0);
    AnalysisRequest req;
    const auto cmd = command_names.find(tokens[0]);
    if (cmd == command_names.end()) throw ParseError("unknown subcommand '" + tokens[0] + "'", 0);
    req.command = cmd->second;

    std::map<std::string, RawFlag> flags;
    for (std::size_t i = 1; i < tokens.size(); ++i) {
        const int pos = static_cast<int>(i);
        std::string_view tok = tokens[i];
        if (tok.substr(0, 2) != "--") throw ParseError("unexpected argument '" + tokens[i] + "'", pos);
        tok.remove_prefix(2);
        const auto eq = tok.find('=');
        const std::string name(tok.substr(0, eq));
        const auto info = flag_table.find(name);
        if (info == flag_table.end()) throw ParseError("unknown flag --" + name, pos);
        if (!info->second.commands.contains(req.command))
            throw ParseError("--" + name + " is not accepted by " + tokens[0], pos);
        if (flags.contains(name)) throw ParseError("--" + name + " given twice", pos);

        RawFlag raw{"", pos, pos};
        if (info->second.kind == FlagKind::Switch) {
            if (eq != std::string_view::npos) throw ParseError("--" + name + " takes no value", pos);
        } else if (eq != std::string_view::npos) {
            raw.value = std::string(tok.substr(eq + 1));
        } else {
            if (i + 1 >= tokens.size()) throw ParseError("--" + name + " needs a value", pos);
            raw.value = tokens[++i];
            raw.value_pos = static_cast<int>(i);
        }
        flags.emplace(name, std::move(raw));
    }
    const int end_pos = static_cast<int>(tokens.size());
    auto get = [&](const char* name) -> const RawFlag* {
        auto it = flags.find(name);
        return it == flags.end() ? nullptr : &it->second;
    };

    // Output format.
    if (get("json") && get("csv")) throw ParseError("--json and --csv are exclusive", get("csv")->flag_pos);
    if (get("json")) req.format = Format::Json;
    if (get("csv")) req.format = Format::Csv;
    if (const auto* f = get("report")) {
        if (get("json") || get("csv")) throw ParseError("--report conflicts with --json/--csv", f->flag_pos);
        if (f->value == "json")
            req.format = Format::Json;
        else if (f->value == "csv")
            req.format = Format::Csv;
        else if (f->value == "text")
            req.format = Format::Text;
        else
            throw ParseError("report format must be json, csv or text", f->value_pos);
    }
    req.quiet = get("quiet") != nullptr;

    // Lie data.
    std::size_t rank = 0;
    const bool needs_type =
        req.command == Command::Analyze || req.command == Command::Curvature || req.command == Command::DumpRoots;
    if (needs_type) {
        const auto* t = get("type");
        if (!t) throw ParseError("missing --type", end_pos);
        try {
            const auto lt = parse_lie_type(t->value);
            req.lie_type = to_string(lt);
            rank = static_cast<std::size_t>(lt.rank);
        } catch (const InvalidType& e) {
            throw ParseError(e.what(), t->value_pos);
        }
    }
    if (const auto* f = get("parabolic")) {
        for (long v : parse_int_list(f->value, f->value_pos, "node index")) {
            if (v < 1 || static_cast<std::size_t>(v) > rank)
                throw ParseError("node index " + std::to_string(v) + " outside 1.." + std::to_string(rank),
                                 f->value_pos);
            req.parabolic.push_back(static_cast<std::size_t>(v));
        }
        std::sort(req.parabolic.begin(), req.parabolic.end());
        if (std::adjacent_find(req.parabolic.begin(), req.parabolic.end()) != req.parabolic.end())
            throw ParseError("duplicate node index in --parabolic", f->value_pos);
        if (req.parabolic.size() == rank)
            throw FullSetNotParabolic("--parabolic lists every node; P = G and the flag variety is a point");
    }
    const std::size_t complement = rank - req.parabolic.size();

    if (const auto* f = get("weight")) {
        auto w = parse_int_list(f->value, f->value_pos, "integer weight coordinate");
        if (w.size() != rank)
            throw ParseError("weight has " + std::to_string(w.size()) + " coordinates, rank is " + std::to_string(rank),
                             f->value_pos);
        req.weight = std::move(w);
    } else if (req.command == Command::Analyze) {
        throw ParseError("missing --weight", end_pos);
    }
    if (const auto* f = get("kahler")) {
        RationalVector k;
        for (auto part : split(f->value, ',')) {
            try {
                k.push_back(parse_rational(part));
            } catch (const InvalidArgument& e) {
                throw ParseError(e.what(), f->value_pos);
            }
        }
        if (k.size() != complement)
            throw ParseError("Kahler class needs " + std::to_string(complement) + " coefficients (one per node outside I)",
                             f->value_pos);
        req.kahler = std::move(k);
    } else if (req.command == Command::Curvature) {
        throw ParseError("missing --kahler", end_pos);
    }
    if (const auto* f = get("line")) {
        auto l = parse_int_list(f->value, f->value_pos, "integer degree");
        if (l.size() != complement)
            throw ParseError("line bundle needs " + std::to_string(complement) + " degrees (one per node outside I)",
                             f->value_pos);
        req.line = std::move(l);
    }

    // Spectral sub-request.
    const bool any_spectral = std::any_of(flags.begin(), flags.end(), [](const auto& kv) {
        return kv.first == "dim" || kv.first == "modes" || kv.first == "profile" || kv.first == "side" ||
               kv.first == "hym" || kv.first == "kappa";
    });
    if (req.command == Command::Spectral || any_spectral) {
        SpectralRequest sr;
        if (const auto* f = get("dim")) {
            sr.dim = parse_number<std::size_t>(f->value, f->value_pos, "dimension");
            if (sr.dim == 0) throw ParseError("dimension must be positive", f->value_pos);
        }
        if (const auto* f = get("modes")) {
            sr.modes = parse_number<std::size_t>(f->value, f->value_pos, "mode count");
            if (sr.modes == 0 || sr.modes > 100000) throw ParseError("mode count must lie in 1..100000", f->value_pos);
        }
        if (const auto* f = get("profile")) {
            parse_profile(f->value, f->value_pos, sr);
            if (sr.codim > sr.dim) throw ParseError("subtorus codimension exceeds the dimension", f->value_pos);
        }
        if (const auto* f = get("side")) {
            sr.side = parse_real(f->value, f->value_pos, "side length");
            if (!(sr.side > 0.0)) throw ParseError("side length must be positive", f->value_pos);
        }
        if (const auto* f = get("hym")) {
            try {
                sr.hym = parse_rational(f->value);
            } catch (const InvalidArgument& e) {
                throw ParseError(e.what(), f->value_pos);
            }
        }
        if (const auto* f = get("kappa")) sr.kappa = parse_real(f->value, f->value_pos, "kappa");
        req.spectral = sr;
    }
    return req;
}

std::vector<std::string> render_request(const AnalysisRequest& r) {
    std::vector<std::string> t{command_name(r.command)};
    auto ints = [](const auto& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
        return s;
    };
    if (!r.lie_type.empty()) t.insert(t.end(), {"--type", r.lie_type});
    if (!r.parabolic.empty()) t.insert(t.end(), {"--parabolic", ints(r.parabolic)});
    if (r.weight) t.insert(t.end(), {"--weight", ints(*r.weight)});
    if (r.kahler) {
        std::string s;
        for (std::size_t i = 0; i < r.kahler->size(); ++i) s += (i ? "," : "") + to_string((*r.kahler)[i]);
        t.insert(t.end(), {"--kahler", s});
    }
    if (r.line) t.insert(t.end(), {"--line", ints(*r.line)});
    if (r.spectral) {
        const auto& s = *r.spectral;
        std::string prof = s.codim == 0 ? "point:" : "subtorus:k=" + std::to_string(s.codim) + ",";
        prof += "s=" + format_real(s.s);
        if (s.offset != 0.0) prof += ",offset=" + format_real(s.offset);
        t.insert(t.end(), {"--dim", std::to_string(s.dim), "--modes", std::to_string(s.modes), "--profile", prof,
                           "--side", format_real(s.side)});
        if (s.hym) t.insert(t.end(), {"--hym", to_string(*s.hym)});
        t.insert(t.end(), {"--kappa", format_real(s.kappa)});
    }
    if (r.format == Format::Json) t.emplace_back("--json");
    if (r.format == Format::Csv) t.emplace_back("--csv");
    if (r.quiet) t.emplace_back("--quiet");
    return t;
}

// ---------------------------------------------------------------------------
// Reports

namespace {

Json rational_json(const Rational& q) { return to_string(q); }

Json integer_json(const Integer& z) {
    if (z.fits_slong_p()) return z.get_si();
    return to_string(z);
}

Json rationals_json(const RationalVector& v) {
    Json a = Json::array();
    for (const auto& q : v) a.push_back(rational_json(q));
    return a;
}

Json weight_json(const Weight& w) { return rationals_json(w.fw); }

Json matrix_json(const IntMatrix& m) {
    Json a = Json::array();
    for (const auto& row : m) a.push_back(row);
    return a;
}

std::vector<std::size_t> one_based(const std::vector<std::size_t>& v) {
    std::vector<std::size_t> out(v);
    for (auto& x : out) ++x;
    return out;
}

std::string root_key(const RootVector& r) {
    std::string s = "(";
    for (std::size_t i = 0; i < r.coords.size(); ++i) s += (i ? "," : "") + std::to_string(r.coords[i]);
    return s + ")";
}

std::string node_key(std::size_t zero_based) { return "alpha_" + std::to_string(zero_based + 1); }

Json request_echo(const AnalysisRequest& r) {
    Json j;
    j["command"] = command_name(r.command);
    if (!r.lie_type.empty()) {
        j["type"] = r.lie_type;
        j["parabolic"] = r.parabolic;
    }
    if (r.weight) j["weight"] = *r.weight;
    if (r.kahler) j["kahler"] = rationals_json(*r.kahler);
    if (r.line) j["line"] = *r.line;
    return j;
}

Json root_system_json(const RootSystem& rs) {
    Json j;
    j["type"] = to_string(rs.lie_type());
    j["rank"] = rs.rank();
    j["cartan"] = matrix_json(rs.cartan());
    j["symmetrizers"] = rs.symmetrizers();
    j["root_norms"] = rs.root_norms();
    j["positive_root_count"] = rs.positive_roots().size();
    return j;
}

Json parabolic_json(const ParabolicData& p) {
    Json j;
    j["levi"] = one_based(p.levi_indices());
    j["complement"] = one_based(p.complement_indices());
    j["levi_cartan"] = matrix_json(p.levi_cartan());
    j["levi_cartan_det"] = integer_json(p.levi_cartan_det());
    j["phi_I_plus_count"] = p.phi_I_plus().size();
    j["flag_dimension"] = p.phi_I_plus().size();
    j["delta_p"] = weight_json(p.delta_p());
    j["delta_p_roots"] = rationals_json(weight_in_root_basis(p.delta_p(), p.root_system()));
    return j;
}

Json bundle_json(const BundleSpec& spec, const SplittingReport& rep) {
    const auto& p = spec.parabolic;
    const auto split = decompose_weight(spec.highest_weight, p);
    Json j;
    j["highest_weight"] = weight_json(spec.highest_weight);
    j["lambda_s"] = weight_json(split.lambda_s);
    j["lambda_c"] = weight_json(split.lambda_c);
    j["rank"] = integer_json(rep.chern.rank);
    j["lambda_E"] = weight_json(rep.chern.lambda_E);
    j["cramer_determinants"] = rationals_json(cramer_determinants(p, split.lambda_s));
    j["cramer_a"] = rationals_json(rep.chern.cramer_a);
    j["cramer_ratio"] = rationals_json(rep.cramer_ratio);
    Json crit = Json::object();
    for (const auto& [beta, v] : rep.criterion_values) crit[node_key(beta)] = rational_json(v);
    j["criterion"] = crit;
    j["splits"] = rep.splits;
    j["lambda_L0"] = rep.lambda_L0 ? weight_json(*rep.lambda_L0) : Json(nullptr);
    j["lambda_E0"] = rep.lambda_E0_check ? weight_json(*rep.lambda_E0_check) : Json(nullptr);
    return j;
}

Json curvature_json(const ParabolicData& p, const KahlerClass& omega, const std::optional<Weight>& line,
                    const char* line_source) {
    const Weight omega_w = kahler_weight(omega, p);
    const Weight psi = line ? *line : omega_w;
    Json j;
    j["kahler"] = rationals_json(omega.coeffs);
    j["kahler_weight"] = weight_json(omega_w);
    j["psi"] = weight_json(psi);
    j["psi_source"] = line ? line_source : "kahler";
    const auto spec = endo_eigenvalues(psi, omega, p);
    Json eig = Json::object();
    for (const auto& [beta, q] : spec.eigenvalues) eig[root_key(beta)] = rational_json(q);
    j["eigenvalues"] = eig;
    j["trace"] = rational_json(spec.trace());
    j["hym_constant"] = line ? Json(rational_json(hym_constant(*line, omega, p))) : Json(nullptr);
    Json traces = Json::object();
    for (auto a : p.complement_indices()) traces[node_key(a)] = rational_json(omega_trace(a, omega, p));
    j["omega_traces"] = traces;
    const auto ke = einstein_class(p);
    j["einstein_class"] = {{"coeffs", rationals_json(ke.coeffs)}, {"two_pi_scaled", ke.two_pi_scaled}};
    return j;
}

const char* certificate_name(IntegrabilityResult::Certificate c) {
    switch (c) {
        case IntegrabilityResult::Certificate::Converged: return "converged";
        case IntegrabilityResult::Certificate::Diverged: return "diverged";
        case IntegrabilityResult::Certificate::Undetermined: return "undetermined";
    }
    return "?";
}

Json spectral_json(const SpectralRequest& sr, const Rational& hym) {
    const auto m = flat_torus(sr.dim, sr.side);
    const SingularProfile prof{sr.dim, sr.codim == 0 ? sr.dim : sr.codim, sr.s, sr.offset};
    Json j;
    j["manifold"] = {{"kind", "flat_torus"}, {"dim", sr.dim}, {"side", sr.side}, {"volume", m.volume()}};
    j["profile"] = {{"kind", sr.codim == 0 ? "point" : "subtorus"},
                    {"codim", prof.codim},
                    {"s", sr.s},
                    {"offset", sr.offset}};
    j["modes"] = sr.modes;
    j["kappa"] = sr.kappa;

    const auto integ = integrability_check(prof.codim, prof.s);
    j["integrable"] = integ.finite;
    j["integrability"] = {{"finite", integ.finite},
                          {"certificate", certificate_name(integ.certificate)},
                          {"agrees", integ.agrees()},
                          {"tube_integral", integ.tube_integral},
                          {"decades", integ.decades}};

    j["hym"] = rational_json(hym);
    if (prof.s < static_cast<double>(prof.codim)) {
        const double mean = profile_mean(prof, m);
        j["profile_mean"] = mean;
        j["c0"] = compatibility_constant(mean, hym);
    } else {
        j["profile_mean"] = nullptr;
        j["c0"] = nullptr;
    }

    if (!prof.l2_integrable()) {
        for (const char* k : {"coeffs_head", "residuals", "h2_gaps", "galerkin", "parseval"}) j[k] = nullptr;
        return j;
    }
    const auto f = distance_profile_coefficients(prof, m, sr.modes);
    Json head = Json::array();
    for (std::size_t i = 0; i < std::min<std::size_t>(16, f.coeffs.size()); ++i) head.push_back(f.coeffs[i]);
    j["coeffs_head"] = head;
    j["residuals"] = residual_curve(f);

    Json gaps = Json::array();
    for (std::size_t n = 1; n <= sr.modes; n *= 2) {
        const std::size_t mm = n / 2;
        gaps.push_back({{"m", mm},
                        {"n", n},
                        {"exact", h2_spectral_gap(f, n, mm, m)},
                        {"bound", h2_cauchy_gap(f, n, mm, m, sr.kappa)}});
    }
    j["h2_gaps"] = gaps;

    const auto sol = solve_weight(f, sr.modes, m);
    const auto k = mean_curvature_coefficients(sol, f, m);
    double mismatch = 0.0;
    for (std::size_t i = 0; i < k.size(); ++i) {
        const double scale = std::max(std::abs(f.coeffs[i]), 1e-300);
        if (f.coeffs[i] != 0.0 || k[i] != 0.0) mismatch = std::max(mismatch, std::abs(k[i] - f.coeffs[i]) / scale);
    }
    j["galerkin"] = {{"n", sol.n},
                     {"residual_l2", sol.residual_l2},
                     {"h2_norm", sol.h2_norm},
                     {"reference_curvature", sol.reference_curvature},
                     {"max_relative_mode_mismatch", mismatch}};
    j["parseval"] = {{"l2_norm_sq", f.l2_norm_sq()}, {"tail_sq", f.tail_sq}};
    return j;
}

Json dump_roots_json(const RootSystem& rs, const std::optional<ParabolicData>& p) {
    Json j = root_system_json(rs);
    Json roots = Json::array();
    for (const auto& r : rs.positive_roots()) {
        Json e;
        e["coords"] = r.coords;
        e["height"] = r.height();
        e["norm"] = integer_json(root_norm(r, rs));
        if (p) {
            const bool levi = std::find(p->levi_roots().begin(), p->levi_roots().end(), r) != p->levi_roots().end();
            e["part"] = levi ? "levi" : "phi_I_plus";
        }
        roots.push_back(e);
    }
    j["positive_roots"] = roots;
    return j;
}

std::vector<std::size_t> zero_based(const std::vector<std::size_t>& v) {
    std::vector<std::size_t> out(v);
    for (auto& x : out) --x;
    return out;
}

}  // namespace

Json build_report(const AnalysisRequest& r) {
    if (r.command == Command::PaperSuite) throw InvalidArgument("paper-suite has no single report");
    Json rep;
    rep["schema_version"] = schema_version;
    rep["command"] = command_name(r.command);
    rep["request"] = request_echo(r);

    if (r.command == Command::Spectral) {
        rep["spectral"] = spectral_json(*r.spectral, r.spectral->hym.value_or(Rational(1)));
        return rep;
    }

    auto rs = build_root_system(parse_lie_type(r.lie_type));
    if (r.command == Command::DumpRoots) {
        std::optional<ParabolicData> p;
        if (!r.parabolic.empty()) p = build_parabolic(rs, zero_based(r.parabolic));
        rep["root_system"] = dump_roots_json(rs, p);
        return rep;
    }

    rep["root_system"] = root_system_json(rs);
    const auto p = build_parabolic(std::move(rs), zero_based(r.parabolic));
    rep["parabolic"] = parabolic_json(p);

    std::optional<SplittingReport> split;
    if (r.weight) {
        const auto spec = make_bundle_spec(p, Weight::from_ints(*r.weight));
        split = splitting_report(spec);
        rep["bundle"] = bundle_json(spec, *split);
    }

    std::optional<Weight> line;
    const char* line_source = "line";
    if (r.line) {
        line = line_bundle_weight(*r.line, p);
    } else if (split && split->lambda_L0) {
        line = *split->lambda_L0;
        line_source = "L0";
    }

    std::optional<Rational> hym;
    if (r.kahler) {
        const KahlerClass omega{*r.kahler, false};
        rep["curvature"] = curvature_json(p, omega, line, line_source);
        if (line) hym = hym_constant(*line, omega, p);
    }
    if (r.spectral) {
        const Rational h = r.spectral->hym ? *r.spectral->hym : hym.value_or(Rational(1));
        rep["spectral"] = spectral_json(*r.spectral, h);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Pinned example suite

namespace {

struct Fixture {
    std::string name;
    std::function<Json()> produce;
    std::vector<std::pair<std::string, Json>> expect;
};

std::function<Json()> from_tokens(std::vector<std::string> tokens) {
    return [tokens = std::move(tokens)] { return build_report(parse_request(tokens)); };
}

Json strs(std::initializer_list<const char*> v) {
    Json a = Json::array();
    for (const char* s : v) a.push_back(s);
    return a;
}

std::vector<Fixture> fixtures() {
    const Json a3 = Json::parse("[[2,-1,0],[-1,2,-1],[0,-1,2]]");
    const Json b3 = Json::parse("[[2,-1,0],[-1,2,-2],[0,-1,2]]");
    const Json d4 = Json::parse("[[2,-1,0,0],[-1,2,-1,-1],[0,-1,2,0],[0,-1,0,2]]");
    std::vector<Fixture> f;

    f.push_back({"universal-bundle-gr2c4",
                 from_tokens({"analyze", "--type", "A3", "--parabolic", "1,3", "--weight", "1,0,0"}),
                 {{"/root_system/cartan", a3},
                  {"/parabolic/levi_cartan", Json::parse("[[2,0],[0,2]]")},
                  {"/parabolic/levi_cartan_det", 4},
                  {"/bundle/rank", 2},
                  {"/bundle/cramer_a", strs({"1", "0"})},
                  {"/bundle/lambda_E", strs({"0", "-1", "0"})},
                  {"/bundle/criterion/alpha_2", "-1/2"},
                  {"/bundle/splits", false}}});

    f.push_back({"spinor-bundle-q5",
                 from_tokens({"analyze", "--type", "B3", "--parabolic", "2,3", "--weight", "0,0,1"}),
                 {{"/root_system/cartan", b3},
                  {"/parabolic/levi_cartan", Json::parse("[[2,-2],[-1,2]]")},
                  {"/bundle/rank", 4},
                  {"/bundle/cramer_a", strs({"2", "4"})},
                  {"/bundle/lambda_E", strs({"-2", "0", "0"})},
                  {"/bundle/criterion/alpha_1", "-1/2"},
                  {"/bundle/splits", false}}});

    f.push_back({"square-spinor-bundle-q5",
                 from_tokens({"analyze", "--type", "B3", "--parabolic", "2,3", "--weight", "0,0,2"}),
                 {{"/bundle/rank", 10},
                  {"/bundle/cramer_a", strs({"10", "20"})},
                  {"/bundle/lambda_E", strs({"-10", "0", "0"})},
                  {"/bundle/criterion/alpha_1", "-1"},
                  {"/bundle/splits", true},
                  {"/bundle/lambda_L0", strs({"-1", "0", "0"})}}});

    f.push_back({"tangent-bundle-gr2c4",
                 from_tokens({"analyze", "--type", "A3", "--parabolic", "1,3", "--weight", "1,-2,1"}),
                 {{"/parabolic/delta_p", strs({"0", "4", "0"})},
                  {"/parabolic/delta_p_roots", strs({"2", "4", "2"})},
                  {"/bundle/rank", 4},
                  {"/bundle/lambda_E", strs({"0", "4", "0"})},
                  {"/bundle/splits", true},
                  {"/bundle/lambda_L0", strs({"0", "1", "0"})}}});

    f.push_back({"spin8-fundamental-fails",
                 from_tokens({"analyze", "--type", "D4", "--parabolic", "1,2", "--weight", "1,0,0,0"}),
                 {{"/root_system/cartan", d4},
                  {"/parabolic/levi_cartan", Json::parse("[[2,-1],[-1,2]]")},
                  {"/parabolic/levi_cartan_det", 3},
                  {"/bundle/cramer_determinants", strs({"2", "1"})},
                  {"/bundle/criterion/alpha_3", "-1/3"},
                  {"/bundle/criterion/alpha_4", "-1/3"},
                  {"/bundle/splits", false}}});

    f.push_back({"spin8-adjoint-type-splits",
                 from_tokens({"analyze", "--type", "D4", "--parabolic", "1,2", "--weight", "1,1,0,0"}),
                 {{"/bundle/cramer_determinants", strs({"3", "3"})},
                  {"/bundle/criterion/alpha_3", "-1"},
                  {"/bundle/criterion/alpha_4", "-1"},
                  {"/bundle/splits", true}}});

    f.push_back({"grassmannian-einstein-curvature",
                 from_tokens({"curvature", "--type", "A3", "--parabolic", "1,3", "--kahler", "4", "--line", "1"}),
                 {{"/curvature/eigenvalues/(0,1,0)", "1/4"},
                  {"/curvature/eigenvalues/(1,1,0)", "1/4"},
                  {"/curvature/eigenvalues/(0,1,1)", "1/4"},
                  {"/curvature/eigenvalues/(1,1,1)", "1/4"},
                  {"/curvature/einstein_class/coeffs", strs({"4"})}}});

    f.push_back({"projective-line-hym",
                 from_tokens({"curvature", "--type", "A1", "--kahler", "1", "--line", "1"}),
                 {{"/curvature/hym_constant", "1"},
                  {"/curvature/omega_traces/alpha_1", "1"},
                  {"/curvature/einstein_class/coeffs", strs({"2"})}}});

    f.push_back({"quadric-split-line-hym",
                 from_tokens({"curvature", "--type", "B3", "--parabolic", "2,3", "--kahler", "1", "--weight", "0,0,2"}),
                 {{"/curvature/psi_source", "L0"},
                  {"/curvature/hym_constant", "-5"},
                  {"/curvature/einstein_class/coeffs", strs({"5"})}}});

    f.push_back({"quadric-l2-threshold",
                 [] {
                     Json j;
                     for (double s : {4.9, 5.0}) {
                         const auto r = integrability_check(10, s);
                         j[format_real(s)] = {{"finite", r.finite}, {"certificate", certificate_name(r.certificate)}};
                     }
                     return j;
                 },
                 {{"/4.9/finite", true},
                  {"/4.9/certificate", "converged"},
                  {"/5/finite", false},
                  {"/5/certificate", "diverged"}}});
    return f;
}

}  // namespace

std::vector<FixtureResult> run_paper_suite() {
    std::vector<FixtureResult> out;
    for (const auto& fx : fixtures()) {
        FixtureResult res{fx.name, fx.produce(), 0};
        for (const auto& [path, expected] : fx.expect) {
            const Json::json_pointer ptr(path);
            if (!res.report.contains(ptr))
                throw FixtureMismatch("fixture " + fx.name + ": field " + path + " is missing");
            const auto& got = res.report.at(ptr);
            if (got != expected)
                throw FixtureMismatch("fixture " + fx.name + ": field " + path + " expected " + expected.dump() +
                                      ", got " + got.dump());
            ++res.checked_fields;
        }
        out.push_back(std::move(res));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Driver

namespace {

const char* usage =
    "usage: parabolica <command> [flags]\n"
    "\n"
    "commands:\n"
    "  analyze      --type T [--parabolic i,j] --weight w1,..,wn [--kahler c,..] [spectral flags]\n"
    "  curvature    --type T [--parabolic i,j] --kahler c,.. [--line d,..] [--weight w1,..,wn]\n"
    "  spectral     [--dim d] [--modes n] [--profile point:s=S | subtorus:k=K,s=S][,offset=O]\n"
    "               [--side L] [--hym q] [--kappa k]\n"
    "  paper-suite  run the pinned example battery\n"
    "  dump-roots   --type T [--parabolic i,j]\n"
    "\n"
    "output: --json, --csv, --report json|csv|text, --quiet\n"
    "exit codes: 0 success, 1 input error, 2 fixture mismatch\n";

void flatten(const Json& j, const std::string& path, std::ostream& out) {
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) flatten(v, path + "/" + k, out);
    } else if (j.is_array() && !j.empty() && (j.front().is_structured())) {
        for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "/" + std::to_string(i), out);
    } else {
        std::string v = j.is_string() ? j.get<std::string>() : j.dump();
        if (v.find_first_of(",\"") != std::string::npos) {
            std::string q = "\"";
            for (char c : v) q += c == '"' ? std::string("\"\"") : std::string(1, c);
            v = q + "\"";
        }
        out << path << "," << v << "\n";
    }
}

std::string text_value(const Json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

std::string text_list(const Json& a) {
    std::string s = "(";
    for (std::size_t i = 0; i < a.size(); ++i) s += (i ? "," : "") + text_value(a[i]);
    return s + ")";
}

void print_text(const Json& rep, std::ostream& out) {
    const auto& req = rep.at("request");
    if (req.contains("type")) {
        out << "type " << req["type"].get<std::string>() << ", I = {";
        const auto& I = req["parabolic"];
        for (std::size_t i = 0; i < I.size(); ++i) out << (i ? "," : "") << I[i].get<std::size_t>();
        out << "}\n";
    }
    if (rep.contains("parabolic")) {
        const auto& p = rep["parabolic"];
        out << "dim X_P = " << p["flag_dimension"] << ", det C_I = " << text_value(p["levi_cartan_det"])
            << ", delta_P = " << text_list(p["delta_p"]) << "\n";
    }
    if (rep.contains("bundle")) {
        const auto& b = rep["bundle"];
        out << "weight " << text_list(b["highest_weight"]) << ": rank " << text_value(b["rank"]) << ", lambda(E) = "
            << text_list(b["lambda_E"]) << ", a = " << text_list(b["cramer_a"]) << "\n";
        for (const auto& [k, v] : b["criterion"].items()) out << "  criterion at " << k << ": " << text_value(v) << "\n";
        out << "splits: " << (b["splits"].get<bool>() ? "yes" : "no");
        if (!b["lambda_L0"].is_null()) out << ", lambda(L0) = " << text_list(b["lambda_L0"]);
        out << "\n";
    }
    if (rep.contains("curvature")) {
        const auto& c = rep["curvature"];
        out << "Kahler class " << text_list(c["kahler"]) << ", psi = " << text_list(c["psi"]) << " ("
            << c["psi_source"].get<std::string>() << ")\n";
        for (const auto& [k, v] : c["eigenvalues"].items()) out << "  q" << k << " = " << text_value(v) << "\n";
        out << "trace = " << text_value(c["trace"]);
        if (!c["hym_constant"].is_null()) out << ", hym constant = " << text_value(c["hym_constant"]);
        out << "\nEinstein class 2pi * " << text_list(c["einstein_class"]["coeffs"]) << "\n";
    }
    if (rep.contains("spectral")) {
        const auto& s = rep["spectral"];
        out << "torus dim " << s["manifold"]["dim"] << ", profile " << s["profile"]["kind"].get<std::string>()
            << " codim " << s["profile"]["codim"] << " s = " << s["profile"]["s"] << "\n";
        out << "L2 integrable: " << (s["integrable"].get<bool>() ? "yes" : "no") << " (numeric "
            << s["integrability"]["certificate"].get<std::string>() << ")\n";
        if (!s["c0"].is_null()) out << "profile mean " << s["profile_mean"] << ", C0 = " << s["c0"] << "\n";
        if (!s["galerkin"].is_null()) {
            const auto& g = s["galerkin"];
            out << "Galerkin n = " << g["n"] << ": residual " << g["residual_l2"] << ", H2 norm " << g["h2_norm"]
                << "\n";
            for (const auto& gap : s["h2_gaps"])
                out << "  H2 gap (" << gap["m"] << "," << gap["n"] << "]: " << gap["exact"] << " <= " << gap["bound"]
                    << "\n";
        }
    }
    if (rep.contains("root_system") && rep["root_system"].contains("positive_roots")) {
        const auto& rs = rep["root_system"];
        out << "type " << rs["type"].get<std::string>() << ", " << rs["positive_root_count"] << " positive roots\n";
        for (const auto& r : rs["positive_roots"]) {
            out << "  " << text_list(r["coords"]) << " height " << r["height"] << " norm " << text_value(r["norm"]);
            if (r.contains("part")) out << " " << r["part"].get<std::string>();
            out << "\n";
        }
    }
}

void print_csv(const Json& rep, std::ostream& out) {
    if (rep.contains("spectral") && rep["command"] == "spectral") {
        const auto& s = rep["spectral"];
        out << "n,residual_l2\n";
        if (s["residuals"].is_array())
            for (std::size_t n = 0; n < s["residuals"].size(); ++n) out << n << "," << s["residuals"][n].dump() << "\n";
        return;
    }
    out << "field,value\n";
    flatten(rep, "", out);
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    if (args.empty()) {
        err << usage;
        return 1;
    }
    if (args[0] == "--help" || args[0] == "-h" || args[0] == "help") {
        out << usage;
        return 0;
    }
    AnalysisRequest req;
    try {
        req = parse_request(args);
    } catch (const ParseError& e) {
        err << "error: " << e.what();
        const auto pos = static_cast<std::size_t>(e.position());
        if (e.position() >= 0 && pos < args.size()) err << " (argument " << pos + 1 << ": '" << args[pos] << "')";
        err << "\n";
        return 1;
    } catch (const Error& e) {
        err << "error [" << e.kind() << "]: " << e.what() << "\n";
        return 1;
    }

    try {
        if (req.command == Command::PaperSuite) {
            const auto results = run_paper_suite();
            if (req.quiet) return 0;
            if (req.format == Format::Json) {
                Json j;
                j["schema_version"] = schema_version;
                j["command"] = "paper-suite";
                Json list = Json::array();
                for (const auto& r : results)
                    list.push_back({{"fixture", r.name}, {"status", "ok"}, {"checked_fields", r.checked_fields},
                                    {"report", r.report}});
                j["fixtures"] = list;
                out << j.dump(2) << "\n";
            } else if (req.format == Format::Csv) {
                out << "fixture,status,checked_fields\n";
                for (const auto& r : results) out << r.name << ",ok," << r.checked_fields << "\n";
            } else {
                for (const auto& r : results) out << "ok  " << r.name << " (" << r.checked_fields << " fields)\n";
                out << results.size() << " fixtures passed\n";
            }
            return 0;
        }
        const Json rep = build_report(req);
        if (req.quiet) return 0;
        switch (req.format) {
            case Format::Json: out << rep.dump(2) << "\n"; break;
            case Format::Csv: print_csv(rep, out); break;
            case Format::Text: print_text(rep, out); break;
        }
        return 0;
    } catch (const FixtureMismatch& e) {
        err << "fixture mismatch: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error [" << e.kind() << "]: " << e.what() << "\n";
        return 1;
    } catch (const InternalError& e) {
        err << "internal error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace parabolica::cli
