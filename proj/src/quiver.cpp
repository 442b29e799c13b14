#include "quiverbps/quiver.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace qbps {

long long dv_total(const DimVector& d) {
    long long s = 0;
    for (int x : d) s += x;
    return s;
}

bool dv_is_zero(const DimVector& d) {
    return std::all_of(d.begin(), d.end(), [](int x) { return x == 0; });
}

bool dv_leq(const DimVector& a, const DimVector& b) {
    if (a.size() != b.size()) throw usage_error("dimension vectors of different length");
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

DimVector dv_add(const DimVector& a, const DimVector& b) {
    if (a.size() != b.size()) throw usage_error("dimension vectors of different length");
    DimVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

DimVector dv_sub(const DimVector& a, const DimVector& b) {
    if (a.size() != b.size()) throw usage_error("dimension vectors of different length");
    DimVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

DimVector dv_scale(int k, const DimVector& d) {
    DimVector r(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) r[i] = k * d[i];
    return r;
}

bool dv_divisible(const DimVector& d, int k) {
    for (int x : d)
        if (x % k != 0) return false;
    return true;
}

DimVector dv_div(const DimVector& d, int k) {
    DimVector r(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) r[i] = d[i] / k;
    return r;
}

DimVector dv_unit(std::size_t n, std::size_t i) {
    DimVector r(n, 0);
    r.at(i) = 1;
    return r;
}

std::string dv_to_string(const DimVector& d) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (i) os << ',';
        os << d[i];
    }
    os << ')';
    return os.str();
}

std::vector<DimVector> dim_vectors_below(const DimVector& box) {
    std::vector<DimVector> out;
    DimVector cur(box.size(), 0);
    while (true) {
        out.push_back(cur);
        std::size_t i = 0;
        for (; i < box.size(); ++i) {
            if (cur[i] < box[i]) {
                ++cur[i];
                for (std::size_t j = 0; j < i; ++j) cur[j] = 0;
                break;
            }
        }
        if (i == box.size()) break;
    }
    std::stable_sort(out.begin(), out.end(), [](const DimVector& a, const DimVector& b) {
        long long ta = dv_total(a), tb = dv_total(b);
        if (ta != tb) return ta < tb;
        return a < b;
    });
    return out;
}

Quiver::Quiver(std::vector<std::string> vertex_names, std::vector<Arrow> arrows)
    : names_(std::move(vertex_names)), arrows_(std::move(arrows)) {
    for (std::size_t i = 0; i < names_.size(); ++i)
        for (std::size_t j = i + 1; j < names_.size(); ++j)
            if (names_[i] == names_[j])
                throw usage_error("duplicate vertex id \"" + names_[i] + "\"");
    for (std::size_t k = 0; k < arrows_.size(); ++k) {
        const Arrow& a = arrows_[k];
        if (a.src < 0 || a.tgt < 0 || a.src >= static_cast<int>(names_.size()) ||
            a.tgt >= static_cast<int>(names_.size()))
            throw usage_error("arrow " + std::to_string(k) + " references a missing vertex");
    }
}

int Quiver::loops_at(std::size_t i) const {
    int n = 0;
    for (const Arrow& a : arrows_)
        if (a.src == static_cast<int>(i) && a.tgt == static_cast<int>(i)) ++n;
    return n;
}

VertexClass Quiver::vertex_class(std::size_t i) const {
    int n = loops_at(i);
    if (n == 0) return VertexClass::Real;
    if (n == 1) return VertexClass::Isotropic;
    return VertexClass::Hyperbolic;
}

bool Quiver::is_loop_free() const {
    for (std::size_t i = 0; i < num_vertices(); ++i)
        if (loops_at(i) > 0) return false;
    return true;
}

void Quiver::check_dim(const DimVector& d, const char* where) const {
    if (d.size() != num_vertices())
        throw usage_error(std::string(where) + ": dimension vector has " +
                          std::to_string(d.size()) + " entries, quiver has " +
                          std::to_string(num_vertices()) + " vertices");
    for (int x : d)
        if (x < 0) throw usage_error(std::string(where) + ": negative entry in dimension vector");
}

std::string Quiver::canonical_string() const {
    std::ostringstream os;
    os << "v:";
    for (std::size_t i = 0; i < names_.size(); ++i) {
        if (i) os << ',';
        os << names_[i];
    }
    os << ";a:";
    for (std::size_t k = 0; k < arrows_.size(); ++k) {
        if (k) os << ',';
        os << arrows_[k].src << '>' << arrows_[k].tgt;
    }
    return os.str();
}

std::uint64_t Quiver::canonical_hash() const {
    std::uint64_t h = 1469598103934665603ull;
    for (char c : canonical_string()) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    return h;
}

long long euler_form(const Quiver& q, const DimVector& a, const DimVector& b) {
    q.check_dim(a, "euler_form");
    q.check_dim(b, "euler_form");
    long long s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += static_cast<long long>(a[i]) * b[i];
    for (const Arrow& ar : q.arrows()) s -= static_cast<long long>(a[ar.src]) * b[ar.tgt];
    return s;
}

long long symmetrized_form(const Quiver& q, const DimVector& a, const DimVector& b) {
    return euler_form(q, a, b) + euler_form(q, b, a);
}

Quiver doubled(const Quiver& q) {
    std::vector<Arrow> arrows = q.arrows();
    for (const Arrow& a : q.arrows()) arrows.push_back(Arrow{a.tgt, a.src});
    return Quiver(q.vertex_names(), std::move(arrows));
}

Quiver tripled(const Quiver& q) {
    Quiver d = doubled(q);
    std::vector<Arrow> arrows = d.arrows();
    for (std::size_t i = 0; i < q.num_vertices(); ++i)
        arrows.push_back(Arrow{static_cast<int>(i), static_cast<int>(i)});
    return Quiver(q.vertex_names(), std::move(arrows));
}

Rat slope(const std::vector<Rat>& zeta, const DimVector& d) {
    if (zeta.size() != d.size()) throw usage_error("slope: stability parameter length mismatch");
    long long total = dv_total(d);
    if (total == 0) throw usage_error("slope: undefined on the zero dimension vector");
    Rat num = 0;
    for (std::size_t i = 0; i < d.size(); ++i) num += zeta[i] * d[i];
    return num / total;
}

bool SlopeSublattice::contains(const DimVector& d) const {
    if (d.size() != zeta.size()) throw usage_error("slope sublattice: length mismatch");
    if (dv_is_zero(d)) return true;
    return slope(zeta, d) == theta;
}

SlopeSublattice slope_sublattice(std::vector<Rat> zeta, Rat theta) {
    return SlopeSublattice{std::move(zeta), std::move(theta)};
}

NakajimaDims nakajima_dim(const Quiver& q, const DimVector& f, const DimVector& d) {
    q.check_dim(f, "nakajima_dim");
    q.check_dim(d, "nakajima_dim");
    long long fd = 0;
    for (std::size_t i = 0; i < d.size(); ++i) fd += static_cast<long long>(f[i]) * d[i];
    long long half = fd - euler_form(q, d, d);
    return NakajimaDims{2 * half, half};
}

RealSubquiver real_subquiver(const Quiver& q) {
    std::vector<int> kept;
    std::vector<int> new_index(q.num_vertices(), -1);
    std::vector<std::string> names;
    for (std::size_t i = 0; i < q.num_vertices(); ++i) {
        if (q.loops_at(i) == 0) {
            new_index[i] = static_cast<int>(kept.size());
            kept.push_back(static_cast<int>(i));
            names.push_back(q.vertex_name(i));
        }
    }
    std::vector<Arrow> arrows;
    for (const Arrow& a : q.arrows())
        if (new_index[a.src] >= 0 && new_index[a.tgt] >= 0)
            arrows.push_back(Arrow{new_index[a.src], new_index[a.tgt]});
    return RealSubquiver{Quiver(std::move(names), std::move(arrows)), std::move(kept)};
}

std::vector<BozecGenerator> bozec_generators(const Quiver& q, const DimVector& box) {
    q.check_dim(box, "bozec_generators");
    std::vector<BozecGenerator> out;
    for (std::size_t i = 0; i < q.num_vertices(); ++i) {
        int max_level = (q.loops_at(i) == 0) ? std::min(1, box[i]) : box[i];
        for (int n = 1; n <= max_level; ++n) out.push_back(BozecGenerator{static_cast<int>(i), n});
    }
    return out;
}

long long bozec_pairing(const Quiver& q, const BozecGenerator& a, const BozecGenerator& b) {
    DimVector ea = dv_unit(q.num_vertices(), static_cast<std::size_t>(a.vertex));
    DimVector eb = dv_unit(q.num_vertices(), static_cast<std::size_t>(b.vertex));
    return static_cast<long long>(a.level) * b.level * symmetrized_form(q, ea, eb);
}

namespace {

Quiver quiver_from_parsed(const nlohmann::json& j) {
    if (!j.is_object()) throw usage_error("quiver JSON: top level must be an object");
    if (!j.contains("vertices") || !j["vertices"].is_array())
        throw usage_error("quiver JSON: missing \"vertices\" array");
    if (!j.contains("arrows") || !j["arrows"].is_array())
        throw usage_error("quiver JSON: missing \"arrows\" array");

    std::vector<std::string> names;
    for (std::size_t i = 0; i < j["vertices"].size(); ++i) {
        const auto& v = j["vertices"][i];
        if (!v.is_string())
            throw usage_error("quiver JSON: vertices[" + std::to_string(i) + "] is not a string");
        names.push_back(v.get<std::string>());
    }
    auto index_of = [&](const std::string& id, std::size_t arrow_pos, const char* field) {
        for (std::size_t i = 0; i < names.size(); ++i)
            if (names[i] == id) return static_cast<int>(i);
        throw usage_error("quiver JSON: arrows[" + std::to_string(arrow_pos) + "]." + field +
                          " references unknown vertex \"" + id + "\"");
    };
    std::vector<Arrow> arrows;
    for (std::size_t k = 0; k < j["arrows"].size(); ++k) {
        const auto& a = j["arrows"][k];
        if (!a.is_object() || !a.contains("src") || !a.contains("tgt") ||
            !a["src"].is_string() || !a["tgt"].is_string())
            throw usage_error("quiver JSON: arrows[" + std::to_string(k) +
                              "] must be an object with string \"src\" and \"tgt\"");
        arrows.push_back(Arrow{index_of(a["src"].get<std::string>(), k, "src"),
                               index_of(a["tgt"].get<std::string>(), k, "tgt")});
    }
    return Quiver(std::move(names), std::move(arrows));
}

}  // namespace

Quiver quiver_from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw usage_error(std::string("quiver JSON: ") + e.what());
    }
    return quiver_from_parsed(j);
}

Quiver quiver_from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw usage_error("cannot open quiver file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return quiver_from_json_text(buf.str());
    } catch (const usage_error& e) {
        throw usage_error(path + ": " + e.what());
    }
}

std::string quiver_to_json_text(const Quiver& q) {
    nlohmann::ordered_json j;
    j["vertices"] = q.vertex_names();
    j["arrows"] = nlohmann::ordered_json::array();
    for (const Arrow& a : q.arrows())
        j["arrows"].push_back({{"src", q.vertex_name(a.src)}, {"tgt", q.vertex_name(a.tgt)}});
    return j.dump();
}

}  // namespace qbps
