#include "expbasis/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <complex>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>

#include "expbasis/classify.hpp"
#include "expbasis/covering.hpp"
#include "expbasis/errors.hpp"
#include "expbasis/format.hpp"
#include "expbasis/geometry.hpp"
#include "expbasis/spectral.hpp"

namespace expbasis {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr const char* kCsvHeader = "# expbasis-csv v1";

// Grid axis stepped in exact decimal arithmetic, so a grid like 0:2.9:0.1
// lands exactly on 0.8 rather than on 8 * double(0.1).
struct SweepAxis {
    std::string name;
    Rational start, step;
    long count = 0;
    Rational at(long i) const { return start + Rational(i) * step; }
};

SweepAxis parse_axis(const std::string& name, const std::string& text) {
    SweepAxis ax;
    ax.name = name;
    auto p1 = text.find(':');
    auto p2 = text.find(':', p1 == std::string::npos ? p1 : p1 + 1);
    if (p1 == std::string::npos || p2 == std::string::npos)
        throw ValidationError("--" + name + " needs start:stop:step, got '" + text + "'");
    ax.start = Rational::parse(text.substr(0, p1));
    Rational stop = Rational::parse(text.substr(p1 + 1, p2 - p1 - 1));
    ax.step = Rational::parse(text.substr(p2 + 1));
    if (!(Rational(0) < ax.step)) throw ValidationError("sweep step must be > 0");
    if (stop < ax.start) throw ValidationError("sweep needs start <= stop");
    ax.count = ((stop - ax.start) / ax.step).floor() + 1;
    return ax;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream f(path);
    if (!f) throw ValidationError("cannot open output file '" + path + "'");
    return f;
}

void write_verdict_columns(std::ostream& os, const BasisClassification& c) {
    os << (c.frame ? 1 : 0) << ',' << (c.riesz_sequence ? 1 : 0) << ','
       << (c.riesz_basis ? 1 : 0) << ',' << (c.complete ? 1 : 0) << ','
       << (c.orthonormal_basis ? 1 : 0) << ',' << c.warnings.size();
}

DomainSpec apply_deg(DomainSpec spec, bool deg, const Config& cfg) {
    if (!deg) return spec;
    if (const auto* s = spec.square_params())
        return DomainSpec::square(s->h, s->theta * kPi / 180.0, cfg);
    return spec;
}

BasisClassification classify_dispatch(const DomainSpec& spec, bool oracle, int resolution,
                                      const Config& cfg) {
    if (oracle) return classify_general(spec, resolution, cfg);
    if (const auto* b = spec.broken_params())
        return classify_broken_interval(b->alpha, b->L, b->r, cfg);
    if (const auto* s = spec.square_params())
        return classify_rotated_square(s->h, s->theta, cfg);
    if (spec.is_box()) return classify_parallelepiped(spec.as_box(), cfg);
    return classify_general(spec, resolution, cfg);  // raw interval unions: exact fold
}

void cmd_covering(std::ostream& out, const DomainSpec& spec, int resolution,
                  const std::string& out_path, const Config& cfg) {
    out << "domain=" << spec.describe() << "\n";
    if (spec.is_one_dimensional()) {
        auto profile = fold_1d(spec.as_interval_union());
        out << "# covering profile: breakpoint value\n";
        for (std::size_t i = 0; i < profile.pieces(); ++i)
            out << fmt12(profile.breakpoints[i].to_double()) << ' ' << profile.values[i] << "\n";
        out << fmt12(profile.breakpoints.back().to_double()) << "\n";
        auto r = essential_range(profile);
        out << "measure=" << fmt12(profile.mass().to_double()) << "\n";
        out << "phi_min=" << r.phi_min << "\n";
        out << "phi_max=" << r.phi_max << "\n";
        return;
    }
    auto sampled = sampled_profile(spec, resolution, cfg);
    out << "resolution=" << sampled.resolution << "\n";
    out << "phi_min=" << sampled.phi_min << "\n";
    out << "phi_max=" << sampled.phi_max << "\n";
    out << "boundary_margin=" << fmt12(sampled.boundary_margin) << "\n";
    if (!out_path.empty()) {
        auto f = open_output(out_path);
        f << kCsvHeader << "\n";
        const int d = sampled.dim, R = sampled.resolution;
        for (int j = 0; j < d; ++j) f << "i" << j << ',';
        f << "count\n";
        std::vector<int> idx(d, 0);
        for (std::int64_t c = 0; c < sampled.cell_count(); ++c) {
            for (int j = 0; j < d; ++j) f << idx[j] << ',';
            f << sampled.counts[static_cast<std::size_t>(c)] << "\n";
            int axis = d - 1;
            while (axis >= 0 && ++idx[axis] == R) { idx[axis] = 0; --axis; }
        }
        out << "cells_written=" << sampled.cell_count() << "\n";
    }
}

void cmd_gram(std::ostream& out, const DomainSpec& spec, int N, bool identities, int trials,
              long quad_n, const std::string& out_path, const Config& cfg) {
    auto G = gram_matrix(spec, N, cfg);
    auto est = extremal_eigenvalues(G, cfg);
    out << "domain=" << spec.describe() << "\n";
    out << "N=" << N << "\n";
    out << "size=" << G.size() << "\n";
    out << "lambda_min=" << fmt12(est.lambda_min) << "\n";
    out << "lambda_max=" << fmt12(est.lambda_max) << "\n";
    out << "measure=" << fmt12(spec.measure(cfg)) << "\n";
    if (spec.is_one_dimensional()) {
        auto r = essential_range(fold_1d(spec.as_interval_union()));
        out << "phi_min=" << r.phi_min << "\n";
        out << "phi_max=" << r.phi_max << "\n";
    }
    if (identities) {
        if (!spec.is_one_dimensional())
            throw ValidationError("--identities supports 1-D domains only");
        for (int t = 0; t < trials; ++t) {
            std::mt19937_64 rng(9000u + static_cast<unsigned>(t));
            std::uniform_real_distribution<double> uni(-1.0, 1.0);
            std::vector<std::complex<double>> a(static_cast<std::size_t>(2 * N + 1));
            for (auto& c : a) c = uni(rng);
            auto rep = energy_identities(spec, -N, a, quad_n, cfg);
            out << "trial=" << t << " q1=" << fmt12(rep.q1) << " q2=" << fmt12(rep.q2)
                << " q3=" << fmt12(rep.q3) << " q4=" << fmt12(rep.q4)
                << " d12=" << fmt12(rep.d12) << " d34=" << fmt12(rep.d34) << "\n";
        }
    }
    if (!out_path.empty()) {
        auto f = open_output(out_path);
        f << kCsvHeader << "\n";
        f << "m,n,re,im\n";
        for (Eigen::Index m = 0; m < G.size(); ++m)
            for (Eigen::Index n = 0; n < G.size(); ++n)
                f << m << ',' << n << ',' << fmt12(G.entries(m, n).real()) << ','
                  << fmt12(G.entries(m, n).imag()) << "\n";
        out << "entries_written=" << G.size() * G.size() << "\n";
    }
}

void cmd_sweep_broken(std::ostream& csv, const SweepAxis& a, const SweepAxis& L,
                      const SweepAxis& r, const Config& cfg) {
    csv << kCsvHeader << "\n";
    csv << "a,L,r,frame,riesz_seq,riesz_basis,complete,onb,warnings\n";
    for (long i = 0; i < a.count; ++i)
        for (long j = 0; j < L.count; ++j)
            for (long k = 0; k < r.count; ++k) {
                Rational av = a.at(i), Lv = L.at(j), rv = r.at(k);
                csv << fmt12(av.to_double()) << ',' << fmt12(Lv.to_double()) << ','
                    << fmt12(rv.to_double()) << ',';
                try {
                    write_verdict_columns(csv, classify_broken_interval(av, Lv, rv, cfg));
                } catch (const ValidationError&) {
                    // grid point outside 0 < a < L: all verdicts 0, one warning
                    csv << "0,0,0,0,0,1";
                }
                csv << "\n";
            }
}

void cmd_sweep_square(std::ostream& csv, const SweepAxis& h, const SweepAxis& theta, bool deg,
                      const Config& cfg) {
    csv << kCsvHeader << "\n";
    csv << "h,theta,frame,riesz_seq,riesz_basis,complete,onb,warnings\n";
    for (long i = 0; i < h.count; ++i)
        for (long j = 0; j < theta.count; ++j) {
            double hv = h.at(i).to_double(), tv = theta.at(j).to_double();
            double theta_rad = deg ? tv * kPi / 180.0 : tv;
            csv << fmt12(hv) << ',' << fmt12(tv) << ',';
            try {
                write_verdict_columns(csv, classify_rotated_square(hv, theta_rad, cfg));
            } catch (const ValidationError&) {
                csv << "0,0,0,0,0,1";
            }
            csv << "\n";
        }
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"decide frame / Riesz sequence / Riesz basis properties of E(Z^d) on a domain"};
    app.require_subcommand(1);
    app.fallthrough();
    // the sweep option --h rules out the usual -h shorthand
    app.set_help_flag("--help", "print help");

    Config cfg;
    bool deg = false;
    std::string out_path;
    app.add_option("--eps", cfg.eps, "geometric tolerance")->capture_default_str();
    app.add_flag("--deg", deg, "interpret angles as degrees");
    app.add_option("--out", out_path, "output file for CSV data");

    std::string spec_str;
    bool oracle = false;
    int resolution = 512;
    auto* c_classify = app.add_subcommand("classify", "classify one domain");
    c_classify->add_option("spec", spec_str, "domain spec, e.g. broken:a=0.3,L=0.8,r=1.1")->required();
    c_classify->add_flag("--oracle", oracle, "force the covering oracle");
    c_classify->add_option("--resolution", resolution, "oracle grid resolution")->capture_default_str();

    std::string family, ax_a, ax_L, ax_r, ax_h, ax_theta;
    auto* c_sweep = app.add_subcommand("sweep", "parameter sweep to CSV");
    c_sweep->set_help_flag("--help", "print help");
    c_sweep->add_option("family", family, "broken | square")->required();
    c_sweep->add_option("--a", ax_a, "start:stop:step");
    c_sweep->add_option("--L", ax_L, "start:stop:step");
    c_sweep->add_option("--r", ax_r, "start:stop:step");
    c_sweep->add_option("--h", ax_h, "start:stop:step");
    c_sweep->add_option("--theta", ax_theta, "start:stop:step");

    auto* c_covering = app.add_subcommand("covering", "covering function report");
    c_covering->add_option("spec", spec_str, "domain spec")->required();
    c_covering->add_option("--resolution", resolution, "grid resolution for d >= 2")
        ->capture_default_str();

    int N = 16, trials = 5;
    long quad_n = 16384;
    bool identities = false;
    auto* c_gram = app.add_subcommand("gram", "Gram matrix spectral report");
    c_gram->add_option("spec", spec_str, "domain spec")->required();
    c_gram->add_option("--N", N, "truncation per axis")->capture_default_str();
    c_gram->add_flag("--identities", identities, "run the energy-identity checks");
    c_gram->add_option("--trials", trials, "identity trials")->capture_default_str();
    c_gram->add_option("--quad", quad_n, "quadrature node budget")->capture_default_str();

    std::vector<std::string> argv_store;
    argv_store.push_back("expbasis");
    for (const auto& a : args) argv_store.push_back(a);
    std::vector<char*> argv;
    for (auto& s : argv_store) argv.push_back(s.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());

        if (*c_classify) {
            auto spec = apply_deg(parse_domain(spec_str, cfg), deg, cfg);
            out << classification_report(classify_dispatch(spec, oracle, resolution, cfg));
        } else if (*c_sweep) {
            if (out_path.empty()) throw ValidationError("sweep needs --out");
            std::int64_t points = 0;
            auto f = open_output(out_path);
            if (family == "broken") {
                auto a = parse_axis("a", ax_a), L = parse_axis("L", ax_L), r = parse_axis("r", ax_r);
                points = static_cast<std::int64_t>(a.count) * L.count * r.count;
                if (points > cfg.sweep_budget) throw ResourceError("sweep grid exceeds the point budget");
                cmd_sweep_broken(f, a, L, r, cfg);
            } else if (family == "square") {
                auto h = parse_axis("h", ax_h), theta = parse_axis("theta", ax_theta);
                points = static_cast<std::int64_t>(h.count) * theta.count;
                if (points > cfg.sweep_budget) throw ResourceError("sweep grid exceeds the point budget");
                cmd_sweep_square(f, h, theta, deg, cfg);
            } else {
                throw ValidationError("unknown sweep family '" + family + "'");
            }
            out << "rows=" << points << "\n";
        } else if (*c_covering) {
            auto spec = apply_deg(parse_domain(spec_str, cfg), deg, cfg);
            cmd_covering(out, spec, resolution, out_path, cfg);
        } else if (*c_gram) {
            auto spec = apply_deg(parse_domain(spec_str, cfg), deg, cfg);
            cmd_gram(out, spec, N, identities, trials, quad_n, out_path, cfg);
        }
        return 0;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const ResourceError& e) {
        err << "resource error: " << e.what() << "\n";
        return 3;
    } catch (const ConvergenceError& e) {
        err << "numerical error: " << e.what()
            << " (partial: lambda_min=" << fmt12(e.partial_lambda_min)
            << ", lambda_max=" << fmt12(e.partial_lambda_max) << ")\n";
        return 4;
    }
}

} // namespace expbasis
