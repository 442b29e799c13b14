#include "quiverbps/render.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"
#include "quiverbps/errors.hpp"

namespace qbps {

namespace {

using nlohmann::ordered_json;

ordered_json quiver_json(const Quiver& q) {
    ordered_json j;
    j["vertices"] = q.vertex_names();
    j["arrows"] = ordered_json::array();
    for (const Arrow& a : q.arrows()) {
        j["arrows"].push_back({{"src", q.vertex_name(a.src)}, {"tgt", q.vertex_name(a.tgt)}});
    }
    return j;
}

ordered_json dims_json(const std::map<DimVector, HalfLaurent>& values) {
    ordered_json arr = ordered_json::array();
    for (const auto& [d, h] : values) {
        arr.push_back(ordered_json::array({ordered_json(d), ordered_json(h.json_triples())}));
    }
    return arr;
}

// One unquoted CSV cell per dimension vector: entries joined by spaces.
std::string dv_cell(const DimVector& d) {
    std::ostringstream os;
    for (std::size_t i = 0; i < d.size(); ++i) os << (i ? " " : "") << d[i];
    return os.str();
}

std::string rat_cell(const Rat& r) { return r.str(); }

void csv_rows(std::ostringstream& os, const std::map<DimVector, HalfLaurent>& values) {
    for (const auto& [d, h] : values) {
        for (const auto& [e, c] : h.terms()) {
            os << dv_cell(d) << ',' << e << ',' << rat_cell(c) << '\n';
        }
    }
}

void table_rows(std::ostringstream& os, const std::map<DimVector, HalfLaurent>& values) {
    std::size_t width = 1;
    for (const auto& [d, h] : values) width = std::max(width, dv_to_string(d).size());
    for (const auto& [d, h] : values) {
        const std::string key = dv_to_string(d);
        os << key << std::string(width - key.size() + 2, ' ')
           << (h.is_zero() ? "0" : h.to_string()) << '\n';
    }
}

}  // namespace

OutputFormat output_format_from_name(const std::string& name) {
    if (name == "json") return OutputFormat::JSON;
    if (name == "csv") return OutputFormat::CSV;
    if (name == "table") return OutputFormat::TABLE;
    throw usage_error("unknown output format \"" + name + "\" (expected json, csv, or table)");
}

std::string render_polynomial(const Quiver& q, const DimVector& d, const std::string& convention,
                              const HalfLaurent& value, OutputFormat format) {
    switch (format) {
        case OutputFormat::JSON: {
            ordered_json j;
            j["quiver"] = quiver_json(q);
            j["convention"] = convention;
            j["d"] = d;
            j["value"] = value.json_triples();
            return j.dump() + "\n";
        }
        case OutputFormat::CSV: {
            std::ostringstream os;
            os << "# convention: " << convention << "\n";
            os << "d,doubled_exp,value\n";
            csv_rows(os, {{d, value}});
            return os.str();
        }
        case OutputFormat::TABLE: {
            std::ostringstream os;
            os << "# quiver: " << q.canonical_string() << "; convention: " << convention << "\n";
            os << dv_to_string(d) << "  " << (value.is_zero() ? "0" : value.to_string()) << "\n";
            return os.str();
        }
    }
    throw usage_error("unhandled output format");
}

std::string render_graded(const Quiver& q, const std::string& convention,
                          const std::map<DimVector, HalfLaurent>& values, OutputFormat format) {
    switch (format) {
        case OutputFormat::JSON: {
            ordered_json j;
            j["quiver"] = quiver_json(q);
            j["convention"] = convention;
            j["characters"] = dims_json(values);
            return j.dump() + "\n";
        }
        case OutputFormat::CSV: {
            std::ostringstream os;
            os << "# convention: " << convention << "\n";
            os << "d,doubled_exp,value\n";
            csv_rows(os, values);
            return os.str();
        }
        case OutputFormat::TABLE: {
            std::ostringstream os;
            os << "# quiver: " << q.canonical_string() << "; convention: " << convention << "\n";
            table_rows(os, values);
            return os.str();
        }
    }
    throw usage_error("unhandled output format");
}

std::string render_extraction(const ExtractionReport& report, const GradedDims& characters,
                              const std::string& convention, OutputFormat format) {
    switch (format) {
        case OutputFormat::JSON: {
            ordered_json j;
            j["quiver"] = quiver_json(report.quiver);
            j["convention"] = convention;
            j["characters"] = dims_json(characters);
            j["extraction"] = ordered_json::array();
            for (const ExtractionEntry& e : report.entries) {
                j["extraction"].push_back({{"d", e.d},
                                           {"residual", e.residual.json_triples()},
                                           {"tag", e.tag},
                                           {"nonnegative", e.nonnegative}});
            }
            j["all_nonnegative"] = report.all_nonnegative;
            return j.dump() + "\n";
        }
        case OutputFormat::CSV: {
            std::ostringstream os;
            os << "# convention: " << convention << "\n";
            os << "d,doubled_exp,value,tag,nonnegative\n";
            for (const ExtractionEntry& e : report.entries) {
                for (const auto& [exp, c] : e.residual.terms()) {
                    os << dv_cell(e.d) << ',' << exp << ',' << rat_cell(c) << ',' << e.tag << ','
                       << (e.nonnegative ? "true" : "false") << '\n';
                }
            }
            return os.str();
        }
        case OutputFormat::TABLE: {
            std::ostringstream os;
            os << "# quiver: " << report.quiver.canonical_string()
               << "; convention: " << convention << "\n";
            std::size_t width = 1;
            for (const ExtractionEntry& e : report.entries) {
                width = std::max(width, dv_to_string(e.d).size());
            }
            for (const ExtractionEntry& e : report.entries) {
                const std::string key = dv_to_string(e.d);
                os << key << std::string(width - key.size() + 2, ' ') << e.residual.to_string()
                   << "  [" << e.tag << "]" << (e.nonnegative ? "" : "  NEGATIVE") << '\n';
            }
            os << (report.all_nonnegative ? "all residuals nonnegative"
                                          : "NEGATIVE RESIDUALS PRESENT")
               << '\n';
            return os.str();
        }
    }
    throw usage_error("unhandled output format");
}

}  // namespace qbps
