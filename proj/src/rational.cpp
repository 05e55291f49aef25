#include "expbasis/rational.hpp"

#include <cctype>
#include <cmath>

namespace expbasis {

Rational Rational::from_double(double x) {
    if (!std::isfinite(x)) throw ValidationError("non-finite value has no rational form");
    mpq_class q;
    mpq_set_d(q.get_mpq_t(), x);
    return Rational(std::move(q));
}

Rational Rational::parse(const std::string& text) {
    if (text.empty()) throw ValidationError("empty number");
    std::size_t i = 0;
    bool neg = false;
    if (text[i] == '+' || text[i] == '-') { neg = text[i] == '-'; ++i; }
    if (i == text.size()) throw ValidationError("malformed number: '" + text + "'");

    std::string digits;
    long frac_digits = -1;  // -1: no '.' seen yet
    std::string denom;      // set for the a/b form
    for (; i < text.size(); ++i) {
        char c = text[i];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            digits.push_back(c);
            if (frac_digits >= 0) ++frac_digits;
        } else if (c == '.' && frac_digits < 0 && denom.empty()) {
            frac_digits = 0;
        } else if (c == '/' && frac_digits < 0 && denom.empty() && !digits.empty()) {
            denom = text.substr(i + 1);
            for (char dc : denom)
                if (!std::isdigit(static_cast<unsigned char>(dc)))
                    throw ValidationError("malformed number: '" + text + "'");
            if (denom.empty()) throw ValidationError("malformed number: '" + text + "'");
            break;
        } else {
            throw ValidationError("malformed number: '" + text + "'");
        }
    }
    if (digits.empty()) throw ValidationError("malformed number: '" + text + "'");

    mpz_class num(digits, 10);
    mpz_class den(1);
    if (!denom.empty()) {
        den = mpz_class(denom, 10);
        if (den == 0) throw ValidationError("zero denominator in '" + text + "'");
    } else if (frac_digits > 0) {
        mpz_ui_pow_ui(den.get_mpz_t(), 10u, static_cast<unsigned long>(frac_digits));
    }
    mpq_class q(num, den);
    q.canonicalize();
    if (neg) q = -q;
    return Rational(std::move(q));
}

long Rational::floor() const {
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
    if (!f.fits_slong_p()) throw ValidationError("rational magnitude too large");
    return f.get_si();
}

Rational Rational::frac() const {
    return *this - Rational(floor());
}

} // namespace expbasis
