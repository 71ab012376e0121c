#include "ptspec/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string_view>

#include "json.hpp"
#include "ptspec/gridfn.hpp"
#include "ptspec/hilbert.hpp"
#include "ptspec/modes.hpp"
#include "ptspec/shooting.hpp"
#include "ptspec/spectrum.hpp"

namespace ptspec {

namespace {

using ordered_json = nlohmann::ordered_json;

// Shortest decimal that round-trips; keeps CSV output platform independent.
std::string shortest(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

std::string_view unquote(std::string_view s) {
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') {
        s.remove_prefix(1);
        s.remove_suffix(1);
    }
    return s;
}

double parse_double(std::string_view s, const std::string& key) {
    double v = 0.0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw PreconditionError("config value for '" + key + "' is not a number");
    return v;
}

int parse_int(std::string_view s, const std::string& key) {
    int v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw PreconditionError("config value for '" + key + "' is not an integer");
    return v;
}

bool parse_bool(std::string_view s, const std::string& key) {
    if (s == "true" || s == "1")
        return true;
    if (s == "false" || s == "0")
        return false;
    throw PreconditionError("config value for '" + key + "' is not a boolean");
}

std::filesystem::path prepare_out(const RunConfig& cfg) {
    std::filesystem::path dir = cfg.out_dir.empty() ? "." : cfg.out_dir;
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec)
        throw PreconditionError("cannot create output directory '" + dir.string() + "': " +
                                ec.message());
    return dir;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out)
        throw PreconditionError("cannot write '" + path.string() + "'");
    std::cout << "wrote " << path.filename().string() << "\n";
}

std::string dump2(const ordered_json& j) { return j.dump(2) + "\n"; }

ordered_json jc(cplx z) { return ordered_json::array({z.real(), z.imag()}); }

// Config echo kept free of the output directory so identical runs into
// different directories produce byte-identical reports.
ordered_json config_echo(const RunConfig& cfg) {
    ordered_json j;
    j["potential"] = cfg.potential;
    j["kmin"] = cfg.kmin;
    j["kmax"] = cfg.kmax;
    j["n"] = cfg.n_scan;
    j["tol"] = cfg.tol;
    j["nodes"] = cfg.n_nodes;
    j["json"] = cfg.write_json;
    j["csv"] = cfg.write_csv;
    return j;
}

ordered_json report_header(const char* command, const RunConfig& cfg) {
    ordered_json j;
    j["schema"] = "pt-spectral/1";
    j["command"] = command;
    j["config"] = config_echo(cfg);
    return j;
}

std::string mode_csv(const std::vector<double>& grid, const std::vector<cplx>& values) {
    std::ostringstream out;
    out << "x,re_psi,im_psi\n";
    for (std::size_t j = 0; j < grid.size(); ++j)
        out << shortest(grid[j]) << ',' << shortest(values[j].real()) << ','
            << shortest(values[j].imag()) << '\n';
    return out.str();
}

std::string two_digit(int n) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%02d", n);
    return buf;
}

ordered_json spectrum_json(const SpectrumReport& rep) {
    ordered_json j;
    ordered_json roots = ordered_json::array();
    for (const RootInfo& r : rep.roots) {
        ordered_json jr;
        jr["k"] = r.k;
        jr["E"] = r.E;
        jr["multiplicity"] = r.multiplicity;
        jr["abs_D"] = r.abs_D;
        jr["abs_Dprime"] = r.abs_Dprime;
        roots.push_back(std::move(jr));
    }
    j["roots"] = std::move(roots);
    j["diagonalizable"] = rep.diagonalizable;
    j["scale"] = rep.scale;
    j["eps_mult"] = rep.eps_mult;
    j["merge_tol"] = rep.merge_tol;
    j["warnings"] = rep.warnings;
    return j;
}

ordered_json curves_json(const std::vector<CompletenessCurve>& curves) {
    ordered_json arr = ordered_json::array();
    for (const CompletenessCurve& c : curves) {
        ordered_json jc_;
        jc_["name"] = c.name;
        jc_["terms"] = c.terms;
        jc_["errors"] = c.errors;
        arr.push_back(std::move(jc_));
    }
    return arr;
}

ordered_json basis_members_json(const Basis& basis, bool with_files) {
    ordered_json arr = ordered_json::array();
    for (std::size_t i = 0; i < basis.members.size(); ++i) {
        const Mode& m = basis.members[i];
        ordered_json jm;
        jm["label"] = basis.labels[i];
        jm["k"] = m.k;
        jm["E"] = m.E;
        jm["multiplicity"] = m.multiplicity;
        jm["chain_index"] = m.chain_index;
        jm["norm"] = to_string(m.norm);
        if (with_files)
            jm["file"] = "xi_" + two_digit(static_cast<int>(i) + 1) + ".csv";
        arr.push_back(std::move(jm));
    }
    return arr;
}

double max_off_diagonal(const Basis& basis) {
    double m = 0.0;
    for (std::size_t i = 0; i < basis.gram.size(); ++i)
        for (std::size_t j = 0; j < basis.gram[i].size(); ++j)
            if (i != j)
                m = std::max(m, std::abs(basis.gram[i][j]));
    return m;
}

double max_diag_defect(const Basis& basis) {
    double m = 0.0;
    for (std::size_t i = 0; i < basis.gram.size(); ++i)
        m = std::max(m, std::abs(basis.gram[i][i] - cplx(1.0, 0.0)));
    return m;
}

ordered_json gram_json(const Basis& basis) {
    ordered_json g = ordered_json::array();
    for (const auto& row : basis.gram) {
        ordered_json jr = ordered_json::array();
        for (const cplx& v : row)
            jr.push_back(jc(v));
        g.push_back(std::move(jr));
    }
    return g;
}

constexpr double kZeroNormRel = 1e-8;

}  // namespace

std::string to_config_text(const RunConfig& cfg) {
    std::ostringstream out;
    out << "potential=\"" << cfg.potential << "\"\n";
    out << "kmin=" << shortest(cfg.kmin) << "\n";
    out << "kmax=" << shortest(cfg.kmax) << "\n";
    out << "n=" << cfg.n_scan << "\n";
    out << "tol=" << shortest(cfg.tol) << "\n";
    out << "nodes=" << cfg.n_nodes << "\n";
    out << "out=\"" << cfg.out_dir << "\"\n";
    out << "json=" << (cfg.write_json ? "true" : "false") << "\n";
    out << "csv=" << (cfg.write_csv ? "true" : "false") << "\n";
    return out.str();
}

RunConfig parse_config_text(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::string_view sv = trim(line);
        if (sv.empty() || sv.front() == '#')
            continue;
        auto eq = sv.find('=');
        if (eq == std::string_view::npos)
            throw PreconditionError("config line is not key=value: '" + std::string(sv) + "'");
        std::string key(trim(sv.substr(0, eq)));
        std::string_view value = unquote(trim(sv.substr(eq + 1)));
        if (key == "potential")
            cfg.potential = std::string(value);
        else if (key == "kmin")
            cfg.kmin = parse_double(value, key);
        else if (key == "kmax")
            cfg.kmax = parse_double(value, key);
        else if (key == "n")
            cfg.n_scan = parse_int(value, key);
        else if (key == "tol")
            cfg.tol = parse_double(value, key);
        else if (key == "nodes")
            cfg.n_nodes = parse_int(value, key);
        else if (key == "out")
            cfg.out_dir = std::string(value);
        else if (key == "json")
            cfg.write_json = parse_bool(value, key);
        else if (key == "csv")
            cfg.write_csv = parse_bool(value, key);
        else
            throw PreconditionError("unknown config key '" + key + "'");
    }
    return cfg;
}

void finalize_formats(RunConfig& cfg) {
    if (!cfg.write_json && !cfg.write_csv) {
        cfg.write_json = true;
        cfg.write_csv = true;
    }
}

PotentialExpr resolve_potential(const std::string& text) {
    if (text == "paper" || text == "zero")
        return builtin_potential(text);
    return parse_potential(text);
}

int exit_code_for(const Error& err) {
    if (dynamic_cast<const SyntaxError*>(&err) || dynamic_cast<const UnknownIdentifier*>(&err) ||
        dynamic_cast<const UnknownName*>(&err) || dynamic_cast<const PreconditionError*>(&err))
        return 2;
    if (dynamic_cast<const ZeroNormWithoutChain*>(&err) ||
        dynamic_cast<const DegenerateGram*>(&err) || dynamic_cast<const OrderTooHigh*>(&err) ||
        dynamic_cast<const GridMismatch*>(&err) || dynamic_cast<const ZeroFunction*>(&err) ||
        dynamic_cast<const NotARoot*>(&err) || dynamic_cast<const NotDoubleRoot*>(&err))
        return 4;
    return 3;  // integration and root-refinement failures
}

int run_scan(const RunConfig& cfg) {
    const PotentialExpr V = resolve_potential(cfg.potential);
    const auto out = prepare_out(cfg);
    const auto scan = characteristic_scan(V, cfg.kmin, cfg.kmax, cfg.n_scan, cfg.tol);

    double scale = 0.0;
    std::size_t failed = 0;
    for (const ScanPoint& p : scan) {
        if (p.ok)
            scale = std::max(scale, std::abs(p.D));
        else
            ++failed;
    }

    if (cfg.write_csv) {
        std::ostringstream csv;
        csv << "k,re_D,im_D,re_Dprime,im_Dprime\n";
        for (const ScanPoint& p : scan) {
            if (!p.ok)
                continue;
            csv << shortest(p.k) << ',' << shortest(p.D.real()) << ',' << shortest(p.D.imag())
                << ',' << shortest(p.Dprime.real()) << ',' << shortest(p.Dprime.imag()) << '\n';
        }
        write_file(out / "scan.csv", csv.str());
    }
    if (cfg.write_json) {
        ordered_json j = report_header("scan", cfg);
        j["n_points"] = scan.size();
        j["n_failed"] = failed;
        j["scale"] = scale;
        ordered_json failures = ordered_json::array();
        for (const ScanPoint& p : scan) {
            if (p.ok)
                continue;
            ordered_json jf;
            jf["k"] = p.k;
            jf["message"] = p.error;
            failures.push_back(std::move(jf));
        }
        j["failures"] = std::move(failures);
        write_file(out / "scan.json", dump2(j));
    }
    return 0;
}

int run_spectrum(const RunConfig& cfg) {
    const PotentialExpr V = resolve_potential(cfg.potential);
    const auto out = prepare_out(cfg);
    const SpectrumReport rep = find_spectrum(V, cfg.kmin, cfg.kmax, cfg.n_scan, cfg.tol);
    if (cfg.write_json) {
        ordered_json j = report_header("spectrum", cfg);
        ordered_json body = spectrum_json(rep);
        for (auto& item : body.items())
            j[item.key()] = item.value();
        write_file(out / "spectrum.json", dump2(j));
    }
    return 0;
}

int run_modes(const RunConfig& cfg) {
    const PotentialExpr V = resolve_potential(cfg.potential);
    const auto out = prepare_out(cfg);
    const SpectrumReport rep = find_spectrum(V, cfg.kmin, cfg.kmax, cfg.n_scan, cfg.tol);
    const auto grid = uniform_grid(cfg.n_nodes);
    const double h = grid_step(cfg.n_nodes);

    ordered_json modes = ordered_json::array();
    std::string sign_pattern;
    int index = 0;
    for (const RootInfo& root : rep.roots) {
        for (int chain = 0; chain < root.multiplicity && chain < 2; ++chain) {
            const Mode mode = chain == 0 ? eigenmode(V, root.k, cfg.tol, cfg.n_nodes)
                                         : associated_mode(V, root.k, cfg.tol, cfg.n_nodes);
            ++index;
            const std::string file =
                "mode_" + two_digit(index) + (chain == 0 ? "" : "_assoc") + ".csv";
            if (cfg.write_csv)
                write_file(out / file, mode_csv(grid, mode.values));

            const PtNorm norms = pt_norm(mode.values, h);
            const PtParity par = pt_parity(mode.values, h);
            const double s2 = l2_norm(mode.values, h) * l2_norm(mode.values, h);
            const bool zero_norm = std::abs(norms.plain) < kZeroNormRel * s2;
            if (chain == 0)
                sign_pattern += zero_norm ? '0' : (norms.with_pt.real() > 0.0 ? '+' : '-');

            ordered_json jm;
            jm["k"] = root.k;
            jm["E"] = root.E;
            jm["multiplicity"] = root.multiplicity;
            jm["chain_index"] = chain;
            jm["file"] = cfg.write_csv ? ordered_json(file) : ordered_json(nullptr);
            jm["pt_norm"] = jc(norms.with_pt);
            jm["plain_norm"] = jc(norms.plain);
            jm["zero_norm"] = zero_norm;
            jm["parity_lambda"] = jc(par.lambda);
            jm["parity_residual"] = par.residual;
            modes.push_back(std::move(jm));
        }
        if (root.multiplicity > 2)
            std::cerr << "note: only the first associated function is exported at k = " << root.k
                      << "\n";
    }

    if (cfg.write_json) {
        ordered_json j = report_header("modes", cfg);
        j["modes"] = std::move(modes);
        j["pt_norm_signs"] = sign_pattern;
        j["warnings"] = rep.warnings;
        write_file(out / "norms.json", dump2(j));
    }
    return 0;
}

int run_basis(const RunConfig& cfg) {
    const PotentialExpr V = resolve_potential(cfg.potential);
    const auto out = prepare_out(cfg);
    const SpectrumReport rep = find_spectrum(V, cfg.kmin, cfg.kmax, cfg.n_scan, cfg.tol);

    int total_members = 0;
    for (const RootInfo& root : rep.roots)
        total_members += root.multiplicity;

    Basis basis;
    try {
        basis = build_xi_basis(V, rep, total_members, cfg.tol, cfg.n_nodes);
    } catch (const Error& err) {
        if (exit_code_for(err) != 4)
            throw;
        if (cfg.write_json) {
            ordered_json j = report_header("basis", cfg);
            j["error"] = err.what();
            j["members"] = ordered_json::array();
            write_file(out / "basis.json", dump2(j));
        }
        std::cerr << "error: " << err.what() << "\n";
        return 4;
    }

    if (cfg.write_csv)
        for (std::size_t i = 0; i < basis.members.size(); ++i)
            write_file(out / ("xi_" + two_digit(static_cast<int>(i) + 1) + ".csv"),
                       mode_csv(basis.grid, basis.members[i].values));

    if (cfg.write_json) {
        ordered_json j = report_header("basis", cfg);
        j["members"] = basis_members_json(basis, cfg.write_csv);
        j["gram"] = gram_json(basis);
        j["max_off_diagonal"] = max_off_diagonal(basis);
        j["max_diag_defect"] = max_diag_defect(basis);
        j["warnings"] = basis.warnings;
        write_file(out / "basis.json", dump2(j));
    }

    if (basis.members.empty()) {
        std::cerr << "error: no basis members in the window\n";
        return 4;
    }
    return 0;
}

int run_completeness(const RunConfig& cfg) {
    const PotentialExpr V = resolve_potential(cfg.potential);
    const auto out = prepare_out(cfg);
    const SpectrumReport rep = find_spectrum(V, cfg.kmin, cfg.kmax, cfg.n_scan, cfg.tol);

    int total_members = 0;
    for (const RootInfo& root : rep.roots)
        total_members += root.multiplicity;

    Basis basis;
    try {
        basis = build_xi_basis(V, rep, total_members, cfg.tol, cfg.n_nodes);
    } catch (const Error& err) {
        if (exit_code_for(err) != 4)
            throw;
        if (cfg.write_json) {
            ordered_json j = report_header("completeness", cfg);
            j["error"] = err.what();
            write_file(out / "completeness.json", dump2(j));
        }
        std::cerr << "error: " << err.what() << "\n";
        return 4;
    }

    ordered_json j = report_header("completeness", cfg);
    if (basis.members.empty()) {
        j["error"] = "no basis members in the window";
        if (cfg.write_json)
            write_file(out / "completeness.json", dump2(j));
        std::cerr << "error: no basis members in the window\n";
        return 4;
    }

    const auto fns = completeness_test_suite(basis.grid);
    const Basis reduced = remove_associated_members(basis);
    std::size_t associated = basis.members.size() - reduced.members.size();
    j["associated_members"] = associated;
    j["full"] = curves_json(completeness_curves(basis, fns));
    j["without_associated"] = curves_json(completeness_curves(reduced, fns));
    if (cfg.write_json)
        write_file(out / "completeness.json", dump2(j));
    return 0;
}

int run_report(const RunConfig& cfg) {
    const PotentialExpr V = resolve_potential(cfg.potential);
    const auto out = prepare_out(cfg);

    DiagonalizabilityReport rep;
    try {
        rep = diagonalizability_report(V, cfg.kmin, cfg.kmax, cfg.n_scan, cfg.tol, cfg.n_nodes);
    } catch (const Error& err) {
        if (exit_code_for(err) != 4)
            throw;
        if (cfg.write_json) {
            ordered_json j = report_header("report", cfg);
            j["error"] = err.what();
            write_file(out / "report.json", dump2(j));
        }
        std::cerr << "error: " << err.what() << "\n";
        return 4;
    }

    ordered_json j = report_header("report", cfg);
    j["verdict"] = rep.verdict;
    j["spectrum"] = spectrum_json(rep.spectrum);
    j["zero_norm_roots"] = rep.zero_norm_roots;
    ordered_json jb;
    jb["members"] = basis_members_json(rep.basis, false);
    jb["max_off_diagonal"] = max_off_diagonal(rep.basis);
    jb["max_diag_defect"] = max_diag_defect(rep.basis);
    jb["associated_members"] = rep.associated_members;
    j["basis"] = std::move(jb);

    bool empty = rep.basis.members.empty();
    if (empty) {
        j["completeness"] = nullptr;
    } else {
        const auto fns = completeness_test_suite(rep.basis.grid);
        const Basis reduced = remove_associated_members(rep.basis);
        ordered_json jcomp;
        jcomp["full"] = curves_json(completeness_curves(rep.basis, fns));
        jcomp["without_associated"] = curves_json(completeness_curves(reduced, fns));
        j["completeness"] = std::move(jcomp);
    }
    j["warnings"] = rep.warnings;
    if (cfg.write_json)
        write_file(out / "report.json", dump2(j));
    if (empty) {
        std::cerr << "error: no basis members in the window\n";
        return 4;
    }
    return 0;
}

int dispatch(const std::string& cmd, const RunConfig& cfg) {
    if (cmd == "scan")
        return run_scan(cfg);
    if (cmd == "spectrum")
        return run_spectrum(cfg);
    if (cmd == "modes")
        return run_modes(cfg);
    if (cmd == "basis")
        return run_basis(cfg);
    if (cmd == "completeness")
        return run_completeness(cfg);
    if (cmd == "report")
        return run_report(cfg);
    throw PreconditionError("unknown subcommand '" + cmd + "'");
}

}  // namespace ptspec
