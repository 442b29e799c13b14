#include "quiverbps/cli.hpp"

#include <cctype>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "quiverbps/bps.hpp"
#include "quiverbps/errors.hpp"
#include "quiverbps/finite_field.hpp"
#include "quiverbps/lie.hpp"
#include "quiverbps/render.hpp"
#include "quiverbps/verify.hpp"

#ifndef QBPS_CORPUS_DIR
#define QBPS_CORPUS_DIR ""
#endif

namespace qbps {

namespace {

std::vector<int> parse_csv_ints(const std::string& text, const char* what) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        try {
            std::size_t used = 0;
            const int v = std::stoi(cell, &used);
            if (used != cell.size()) throw std::invalid_argument(cell);
            out.push_back(v);
        } catch (const std::exception&) {
            throw usage_error(std::string(what) + ": cannot parse \"" + cell + "\" in \"" + text +
                              "\"");
        }
    }
    if (out.empty()) throw usage_error(std::string(what) + ": empty list");
    return out;
}

DimVector parse_dim(const std::string& text, const char* what) {
    const std::vector<int> v = parse_csv_ints(text, what);
    for (int x : v) {
        if (x < 0) throw usage_error(std::string(what) + ": negative entry in \"" + text + "\"");
    }
    return v;
}

// Window bounds are plain integer exponents on the command line; the engines
// track doubled (half-integer-capable) exponents internally.
NilpotencyClass class_from_flag(const std::string& name) {
    std::string upper = name;
    for (char& c : upper) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return nilpotency_class_from_name(upper);
}

std::pair<int, int> parse_window(const std::string& text) {
    const std::vector<int> v = parse_csv_ints(text, "--window");
    if (v.size() != 2 || v[0] > v[1]) {
        throw usage_error("--window: expected LO,HI with LO <= HI, got \"" + text + "\"");
    }
    return {2 * v[0], 2 * v[1]};
}

struct Args {
    std::string quiver_path;
    std::string dim_csv;
    std::string box_csv;
    std::string window_csv;
    std::string primes_csv;
    long long cap = kDefaultCliCap;
    std::string format = "table";
    std::string cache_path;
    int jobs = 1;

    // Subcommand-local.  cls_name stays empty until a subcommand-specific
    // default is chosen (nilpotent-kac: ssn, char: all).
    std::string method = "hua";
    std::string cls_name;
    std::string which = "bps";
    bool twisted = false;
    std::string framing_csv;
    std::string suite = "all";
    std::string corpus_dir = QBPS_CORPUS_DIR;
};

Quiver require_quiver(const Args& a) {
    if (a.quiver_path.empty()) throw usage_error("--quiver PATH is required");
    return quiver_from_json_file(a.quiver_path);
}

DimVector require_dim(const Args& a, const Quiver& q, const char* where) {
    if (a.dim_csv.empty()) throw usage_error("--dim CSV is required");
    DimVector d = parse_dim(a.dim_csv, "--dim");
    q.check_dim(d, where);
    return d;
}

DimVector require_box(const Args& a, const Quiver& q, const char* where) {
    if (a.box_csv.empty()) throw usage_error("--box CSV is required");
    DimVector b = parse_dim(a.box_csv, "--box");
    q.check_dim(b, where);
    return b;
}

std::pair<int, int> window_or_default(const Args& a) {
    if (a.window_csv.empty()) return {-20, 20};
    return parse_window(a.window_csv);
}

struct CacheHolder {
    std::optional<ResultCache> cache;

    explicit CacheHolder(const std::string& path) {
        if (path.empty()) return;
        const bool existed = std::filesystem::exists(path);
        cache.emplace(path);
        if (existed && cache->dirty()) {
            std::cerr << "warning: cache file " << path
                      << " is unreadable; ignoring it and recomputing\n";
        }
    }
    ~CacheHolder() {
        try {
            if (cache) cache->save();
        } catch (...) {
            // Failure to persist the advisory cache never changes results.
        }
    }
};

CountingConfig make_counting_config(const Args& a, ResultCache* cache) {
    CountingConfig cfg;
    cfg.cap = a.cap;
    cfg.jobs = a.jobs;
    cfg.cache = cache;
    if (!a.primes_csv.empty()) {
        cfg.primes = parse_csv_ints(a.primes_csv, "--primes");
        for (std::size_t i = 0; i < cfg.primes.size(); ++i) {
            if (!is_prime(cfg.primes[i])) {
                throw usage_error("--primes: " + std::to_string(cfg.primes[i]) + " is not prime");
            }
            for (std::size_t j = i + 1; j < cfg.primes.size(); ++j) {
                if (cfg.primes[i] == cfg.primes[j]) {
                    throw usage_error("--primes: duplicate entry " +
                                      std::to_string(cfg.primes[i]));
                }
            }
        }
    }
    if (a.cap <= 0) throw usage_error("--cap must be positive");
    if (a.jobs <= 0) throw usage_error("--jobs must be positive");
    return cfg;
}

int cmd_kac(const Args& a, NilpotencyClass cls) {
    const Quiver q = require_quiver(a);
    const char* name = cls == NilpotencyClass::ALL ? "kac" : "nilpotent-kac";
    const DimVector d = require_dim(a, q, name);
    if (dv_is_zero(d)) throw usage_error(std::string(name) + ": dimension vector must be nonzero");
    CacheHolder holder(a.cache_path);
    const CountingConfig cfg = make_counting_config(a, holder.cache ? &*holder.cache : nullptr);

    HalfLaurent poly;
    if (cls != NilpotencyClass::ALL) {
        poly = interpolate_kac(q, d, cls, cfg).poly;
    } else if (a.method == "hua") {
        poly = hua_kac(q, d, cfg).poly;
    } else if (a.method == "brute") {
        poly = interpolate_kac(q, d, cls, cfg).poly;
    } else if (a.method == "both") {
        poly = hua_kac(q, d, cfg).poly;
        const HalfLaurent brute = interpolate_kac(q, d, cls, cfg).poly;
        if (poly != brute) {
            throw check_error("count engines disagree at " + dv_to_string(d) +
                              ": partition formula " + poly.to_string() + ", interpolated " +
                              brute.to_string());
        }
    } else {
        throw usage_error("--method must be hua, brute, or both");
    }
    std::cout << render_polynomial(q, d, "t", poly, output_format_from_name(a.format));
    return 0;
}

int cmd_nilpotent_kac(const Args& a) {
    const NilpotencyClass cls =
        class_from_flag(a.cls_name.empty() ? "ssn" : a.cls_name);
    if (cls == NilpotencyClass::ALL) {
        throw usage_error("nilpotent-kac: --class must be one of ssn, sn, n");
    }
    return cmd_kac(a, cls);
}

int cmd_char(const Args& a) {
    const Quiver q = require_quiver(a);
    const OutputFormat fmt = output_format_from_name(a.format);
    CacheHolder holder(a.cache_path);
    const CountingConfig cfg = make_counting_config(a, holder.cache ? &*holder.cache : nullptr);

    if (a.which == "bps") {
        const NilpotencyClass cls =
            class_from_flag(a.cls_name.empty() ? "all" : a.cls_name);
        const DimVector box = require_box(a, q, "char");
        const BPSCharacter b = bps_character(q, cls, box, cfg);
        std::cout << render_graded(q, convention_label(cls), b.values, fmt);
        return 0;
    }
    if (a.which == "coha") {
        const DimVector box = require_box(a, q, "char");
        const auto [lo, hi] = window_or_default(a);
        const GradedSeries s = coha_character(q, box, lo, hi, a.twisted, cfg);
        std::cout << render_graded(q, convention_label(NilpotencyClass::ALL), s.terms(), fmt);
        return 0;
    }
    if (a.which == "zeroth") {
        const DimVector box = require_box(a, q, "char");
        std::cout << render_graded(q, "t", zeroth_piece_character(q, box), fmt);
        return 0;
    }
    throw usage_error("--which must be bps, coha, or zeroth");
}

int cmd_km_mult(const Args& a) {
    const Quiver q = require_quiver(a);
    const DimVector box = require_box(a, q, "km-mult");
    std::cout << render_graded(q, "t", km_root_mult_recursion(q, box),
                               output_format_from_name(a.format));
    return 0;
}

int cmd_bozec_dims(const Args& a) {
    const Quiver q = require_quiver(a);
    const DimVector box = require_box(a, q, "bozec-dims");
    std::cout << render_graded(q, "t", borcherds_bozec_dims(q, box),
                               output_format_from_name(a.format));
    return 0;
}

int cmd_extract(const Args& a) {
    const Quiver q = require_quiver(a);
    const DimVector box = require_box(a, q, "extract");
    const auto [lo, hi] = window_or_default(a);
    CacheHolder holder(a.cache_path);
    const CountingConfig cfg = make_counting_config(a, holder.cache ? &*holder.cache : nullptr);
    const ExtractionReport report = cuspidal_extract(q, box, lo, hi, cfg);
    const BPSCharacter b = bps_character(q, NilpotencyClass::ALL, box, cfg);
    std::cout << render_extraction(report, b.values, convention_label(NilpotencyClass::ALL),
                                   output_format_from_name(a.format));
    return 0;
}

int cmd_nakajima(const Args& a) {
    const Quiver q = require_quiver(a);
    if (a.framing_csv.empty()) throw usage_error("--framing CSV is required");
    const DimVector f = parse_dim(a.framing_csv, "--framing");
    q.check_dim(f, "nakajima-dim framing");
    const DimVector d = require_dim(a, q, "nakajima-dim");
    const NakajimaDims n = nakajima_dim(q, f, d);
    switch (output_format_from_name(a.format)) {
        case OutputFormat::JSON: {
            nlohmann::ordered_json j;
            j["framing"] = f;
            j["d"] = d;
            j["full"] = n.full;
            j["lagrangian_half"] = n.lagrangian_half;
            std::cout << j.dump() << "\n";
            break;
        }
        case OutputFormat::CSV: {
            auto cell = [](const DimVector& v) {
                std::ostringstream os;
                for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i];
                return os.str();
            };
            std::cout << "framing,d,full,lagrangian_half\n";
            std::cout << cell(f) << "," << cell(d) << "," << n.full << "," << n.lagrangian_half
                      << "\n";
            break;
        }
        case OutputFormat::TABLE:
            std::cout << "# quiver: " << q.canonical_string() << "\n";
            std::cout << "framing " << dv_to_string(f) << "  d " << dv_to_string(d) << "  full "
                      << n.full << "  lagrangian half " << n.lagrangian_half << "\n";
            break;
    }
    return 0;
}

int cmd_verify(const Args& a) {
    VerifyOptions opt;
    if (a.corpus_dir.empty()) throw usage_error("verify: no corpus directory configured");
    opt.corpus_dir = a.corpus_dir;
    if (!a.box_csv.empty()) opt.box = parse_dim(a.box_csv, "--box");
    CacheHolder holder(a.cache_path);
    opt.counting = make_counting_config(a, holder.cache ? &*holder.cache : nullptr);
    const VerificationOutcome outcome = run_verification(a.suite, opt);
    std::cout << render_verification(outcome) << "\n" << render_criterion_summary(outcome);
    return outcome.all_pass() ? 0 : 1;
}

void report_error(const char* type, const std::string& message, std::optional<double> estimate) {
    nlohmann::ordered_json j;
    j["error"]["type"] = type;
    j["error"]["message"] = message;
    if (estimate) j["error"]["estimate"] = *estimate;
    std::cerr << j.dump() << "\n";
}

}  // namespace

int run_cli(int argc, char** argv) {
    Args a;
    CLI::App app{"Quiver invariants: count polynomials, graded Lie-algebra characters, and the "
                 "verification suite binding them together"};
    app.require_subcommand(1);
    app.add_option("--quiver", a.quiver_path, "Quiver JSON file");
    app.add_option("--dim", a.dim_csv, "Dimension vector, comma-separated");
    app.add_option("--box", a.box_csv, "Componentwise degree bound, comma-separated");
    app.add_option("--window", a.window_csv, "Exponent window LO,HI");
    app.add_option("--primes", a.primes_csv, "Primes for counting, comma-separated");
    app.add_option("--cap", a.cap, "Enumeration size cap");
    app.add_option("--format", a.format, "Output format: json, csv, or table");
    app.add_option("--cache", a.cache_path, "Result cache file");
    app.add_option("--jobs", a.jobs, "Worker threads for counting");

    CLI::App* sc_kac = app.add_subcommand("kac", "Count polynomial of a dimension vector");
    sc_kac->add_option("--method", a.method, "hua, brute, or both");
    CLI::App* sc_nil =
        app.add_subcommand("nilpotent-kac", "Nilpotent-class count polynomial (interpolated)");
    sc_nil->add_option("--class", a.cls_name, "ssn, sn, or n");
    CLI::App* sc_char = app.add_subcommand("char", "Graded characters over a box");
    sc_char->add_option("--which", a.which, "bps, coha, or zeroth");
    sc_char->add_option("--class", a.cls_name, "all, ssn, sn, or n (bps only)");
    sc_char->add_flag("--twisted", a.twisted, "Apply the per-degree self-pairing twist (coha)");
    CLI::App* sc_km = app.add_subcommand("km-mult", "Root multiplicities from the loop-free "
                                                    "recursion");
    CLI::App* sc_bozec = app.add_subcommand("bozec-dims", "Presented-algebra graded dimensions");
    CLI::App* sc_extract =
        app.add_subcommand("extract", "Peel generators from the counted character");
    CLI::App* sc_nakajima = app.add_subcommand("nakajima-dim", "Framed moduli dimension formula");
    sc_nakajima->add_option("--framing", a.framing_csv, "Framing vector, comma-separated");
    CLI::App* sc_verify = app.add_subcommand("verify", "Run the acceptance suites");
    sc_verify->add_option("--suite", a.suite, "all, kac, lie, or bps");
    sc_verify->add_option("--corpus", a.corpus_dir, "Directory holding the corpus quivers");

    for (CLI::App* sub : {sc_kac, sc_nil, sc_char, sc_km, sc_bozec, sc_extract, sc_nakajima,
                          sc_verify}) {
        sub->fallthrough();
    }

    try {
        try {
            app.parse(argc, argv);
        } catch (const CLI::ParseError& e) {
            if (e.get_exit_code() == 0) return app.exit(e);
            throw usage_error(e.what());
        }
        if (app.got_subcommand("kac")) return cmd_kac(a, NilpotencyClass::ALL);
        if (app.got_subcommand("nilpotent-kac")) return cmd_nilpotent_kac(a);
        if (app.got_subcommand("char")) return cmd_char(a);
        if (app.got_subcommand("km-mult")) return cmd_km_mult(a);
        if (app.got_subcommand("bozec-dims")) return cmd_bozec_dims(a);
        if (app.got_subcommand("extract")) return cmd_extract(a);
        if (app.got_subcommand("nakajima-dim")) return cmd_nakajima(a);
        if (app.got_subcommand("verify")) return cmd_verify(a);
        throw usage_error("no subcommand given");
    } catch (const usage_error& e) {
        report_error("usage", e.what(), std::nullopt);
        return 2;
    } catch (const resource_error& e) {
        report_error("resource", e.what(), e.estimate() > 0 ? std::optional<double>(e.estimate()) : std::nullopt);
        return 3;
    } catch (const check_error& e) {
        report_error("check", e.what(), std::nullopt);
        return 1;
    } catch (const std::exception& e) {
        report_error("internal", e.what(), std::nullopt);
        return 1;
    }
}

}  // namespace qbps
