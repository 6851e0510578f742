#include "sumdil/dilate_const.hpp"

#include "sumdil/error.hpp"

#include <sstream>

namespace sumdil {

namespace {

void require_generation(const DilateSystem& sys)
{
    if (sys.d() > 1 && !dilates_generate_field(sys))
        fail_input("dilates generate proper subfield");
}

HResult assemble(const DilateSystem& sys, Interval arch)
{
    HResult r;
    r.ideal_norm_factor = denominator_norm(sys);
    mpfr_prec_t prec = arch.precision();
    r.h = Interval(Rat(r.ideal_norm_factor), prec) * arch;
    r.archimedean = std::move(arch);
    if (sys.d() == 1) {
        Rat s = 1;
        for (const auto& l : sys.dilates)
            s += abs(l.coeffs.empty() ? Rat(0) : l.coeffs[0]);
        Rat exact = Rat(r.ideal_norm_factor) * s;
        if (!r.h.contains(exact))
            fail_internal("exact rational H outside its interval");
        r.exact_rational = exact;
        r.h = Interval(exact, prec);
    }
    return r;
}

} // namespace

HResult h_constant(const DilateSystem& sys, double width)
{
    require_generation(sys);
    Int n = denominator_norm(sys);
    // Width scales with N(D).
    double arch_width = width / (2 * n.get_d());
    return assemble(sys, archimedean_product(sys, arch_width));
}

HResult h_constant(const DilateSystem& sys, const EmbeddingData& e)
{
    require_generation(sys);
    return assemble(sys, archimedean_product(sys, e));
}

std::string to_string(const HResult& h, int digits)
{
    std::ostringstream os;
    if (h.exact_rational)
        os << h.exact_rational->get_str();
    else
        os << "[" << h.h.lo_str(digits) << ", " << h.h.hi_str(digits) << "]";
    return os.str();
}

} // namespace sumdil
