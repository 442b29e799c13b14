#include "quiverbps/half_laurent.hpp"

#include <sstream>

namespace qbps {

HalfLaurent HalfLaurent::constant(const Rat& c) {
    HalfLaurent h;
    if (c != 0) h.coeffs_[0] = c;
    return h;
}

HalfLaurent HalfLaurent::monomial(int doubled_exp, const Rat& c) {
    HalfLaurent h;
    if (c != 0) h.coeffs_[doubled_exp] = c;
    return h;
}

bool HalfLaurent::is_one() const {
    return coeffs_.size() == 1 && coeffs_.begin()->first == 0 && coeffs_.begin()->second == 1;
}

Rat HalfLaurent::coeff(int doubled_exp) const {
    auto it = coeffs_.find(doubled_exp);
    return it == coeffs_.end() ? Rat(0) : it->second;
}

void HalfLaurent::set_coeff(int doubled_exp, const Rat& c) {
    if (c == 0)
        coeffs_.erase(doubled_exp);
    else
        coeffs_[doubled_exp] = c;
}

void HalfLaurent::add_coeff(int doubled_exp, const Rat& c) {
    if (c == 0) return;
    Rat& slot = coeffs_[doubled_exp];
    slot += c;
    if (slot == 0) coeffs_.erase(doubled_exp);
}

int HalfLaurent::min_exp() const {
    if (coeffs_.empty()) throw check_error("min_exp of zero series");
    return coeffs_.begin()->first;
}

int HalfLaurent::max_exp() const {
    if (coeffs_.empty()) throw check_error("max_exp of zero series");
    return coeffs_.rbegin()->first;
}

HalfLaurent HalfLaurent::operator-() const {
    HalfLaurent r;
    for (const auto& [e, c] : coeffs_) r.coeffs_[e] = -c;
    return r;
}

HalfLaurent& HalfLaurent::operator+=(const HalfLaurent& o) {
    for (const auto& [e, c] : o.coeffs_) add_coeff(e, c);
    return *this;
}

HalfLaurent& HalfLaurent::operator-=(const HalfLaurent& o) {
    for (const auto& [e, c] : o.coeffs_) add_coeff(e, -c);
    return *this;
}

HalfLaurent operator*(const HalfLaurent& a, const HalfLaurent& b) {
    HalfLaurent r;
    for (const auto& [ea, ca] : a.coeffs_)
        for (const auto& [eb, cb] : b.coeffs_) r.add_coeff(ea + eb, ca * cb);
    return r;
}

HalfLaurent mul_truncated_below(const HalfLaurent& a, const HalfLaurent& b, int floor) {
    HalfLaurent r;
    for (const auto& [ea, ca] : a.terms())
        for (const auto& [eb, cb] : b.terms()) {
            int e = ea + eb;
            if (e >= floor) r.add_coeff(e, ca * cb);
        }
    return r;
}

HalfLaurent HalfLaurent::scaled(const Rat& c) const {
    HalfLaurent r;
    if (c == 0) return r;
    for (const auto& [e, v] : coeffs_) r.coeffs_[e] = v * c;
    return r;
}

HalfLaurent HalfLaurent::psi(int k) const {
    if (k <= 0) throw usage_error("psi: k must be positive");
    HalfLaurent r;
    for (const auto& [e, c] : coeffs_) r.coeffs_[e * k] = c;
    return r;
}

HalfLaurent HalfLaurent::shifted(int doubled_delta) const {
    HalfLaurent r;
    for (const auto& [e, c] : coeffs_) r.coeffs_[e + doubled_delta] = c;
    return r;
}

HalfLaurent HalfLaurent::inverted() const {
    HalfLaurent r;
    for (const auto& [e, c] : coeffs_) r.coeffs_[-e] = c;
    return r;
}

HalfLaurent HalfLaurent::truncated(int lo, int hi) const {
    HalfLaurent r;
    for (const auto& [e, c] : coeffs_)
        if (e >= lo && e <= hi) r.coeffs_[e] = c;
    return r;
}

HalfLaurent HalfLaurent::truncated_below(int lo) const {
    HalfLaurent r;
    for (const auto& [e, c] : coeffs_)
        if (e >= lo) r.coeffs_[e] = c;
    return r;
}

bool HalfLaurent::all_integer_coeffs() const {
    for (const auto& [e, c] : coeffs_) {
        (void)e;
        if (!is_integer(c)) return false;
    }
    return true;
}

bool HalfLaurent::all_integer_exponents() const {
    for (const auto& [e, c] : coeffs_) {
        (void)c;
        if (e % 2 != 0) return false;
    }
    return true;
}

bool HalfLaurent::all_nonnegative_coeffs() const {
    for (const auto& [e, c] : coeffs_) {
        (void)e;
        if (c < 0) return false;
    }
    return true;
}

bool HalfLaurent::is_signed_dimension_series() const {
    for (const auto& [e, c] : coeffs_) {
        if (!is_integer(c)) return false;
        bool odd = ((e % 2) + 2) % 2 == 1;
        if (odd && c > 0) return false;
        if (!odd && c < 0) return false;
    }
    return true;
}

Int HalfLaurent::eval_at(const Int& x) const {
    Int acc = 0;
    for (const auto& [e, c] : coeffs_) {
        if (e % 2 != 0 || e < 0)
            throw check_error("eval_at requires a polynomial with integer exponents");
        acc += to_integer(c) * int_pow(x, static_cast<unsigned>(e / 2));
    }
    return acc;
}

namespace {

std::string rat_to_string(const Rat& r) {
    std::ostringstream os;
    if (is_integer(r))
        os << rat_num(r);
    else
        os << rat_num(r) << '/' << rat_den(r);
    return os.str();
}

std::string monomial_to_string(int e, const Rat& c_abs) {
    std::string var;
    if (e == 0) return rat_to_string(c_abs);
    if (e == 2)
        var = "q";
    else if (e % 2 == 0)
        var = "q^(" + std::to_string(e / 2) + ")";
    else
        var = "q^(" + std::to_string(e) + "/2)";
    if (c_abs == 1) return var;
    std::string coeff = rat_to_string(c_abs);
    if (!is_integer(c_abs)) coeff = "(" + coeff + ")";
    return coeff + var;
}

}  // namespace

std::string HalfLaurent::to_string() const {
    if (coeffs_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : coeffs_) {
        Rat abs = c < 0 ? Rat(-c) : c;
        if (first) {
            if (c < 0) os << "-";
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        os << monomial_to_string(e, abs);
    }
    return os.str();
}

std::vector<std::vector<std::string>> HalfLaurent::json_triples() const {
    std::vector<std::vector<std::string>> out;
    for (const auto& [e, c] : coeffs_)
        out.push_back({std::to_string(e), rat_num(c).str(), rat_den(c).str()});
    return out;
}

}  // namespace qbps
