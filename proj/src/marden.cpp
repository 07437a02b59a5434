#include "inellipse/marden.hpp"

#include <cmath>
#include <complex>

namespace inellipse {

MardenResult marden_inellipse(const MardenInput& in) {
    const double tsum = in.t1 + in.t2 + in.t3;
    if (std::abs(tsum - 1.0) > 1e-12) throw InputError("Marden weights must sum to 1");
    if (!(in.t1 * in.t2 * in.t3 > 0.0)) throw InputError("Marden weights must have positive product");
    const double area2 = cross2(in.z2 - in.z1, in.z3 - in.z1);
    const double scale = std::max({(in.z2 - in.z1).norm(), (in.z3 - in.z1).norm(), 1.0});
    if (std::abs(area2) <= 1e-14 * scale * scale) throw CollinearVerticesError();

    using cd = std::complex<double>;
    const cd z1(in.z1.x(), in.z1.y()), z2(in.z2.x(), in.z2.y()), z3(in.z3.x(), in.z3.y());
    // t1(z-z2)(z-z3) + t2(z-z1)(z-z3) + t3(z-z1)(z-z2) = z^2 - b z + c
    const cd b = in.t1 * (z2 + z3) + in.t2 * (z1 + z3) + in.t3 * (z1 + z2);
    const cd c = in.t1 * z2 * z3 + in.t2 * z1 * z3 + in.t3 * z1 * z2;
    const cd root = std::sqrt(b * b - 4.0 * c);
    cd f1 = (b - root) / 2.0, f2 = (b + root) / 2.0;
    if (f2.real() < f1.real() || (f2.real() == f1.real() && f2.imag() < f1.imag())) std::swap(f1, f2);

    MardenResult out;
    out.foci = {Point(f1.real(), f1.imag()), Point(f2.real(), f2.imag())};
    out.tangency[0] = (in.t2 * in.z3 + in.t3 * in.z2) / (in.t2 + in.t3);
    out.tangency[1] = (in.t1 * in.z3 + in.t3 * in.z1) / (in.t1 + in.t3);
    out.tangency[2] = (in.t1 * in.z2 + in.t2 * in.z1) / (in.t1 + in.t2);
    return out;
}

}  // namespace inellipse
