#include "nlchain/dft.hpp"

#include <unsupported/Eigen/FFT>

namespace nlchain {

// One FFT object per call keeps the layer stateless; kissfft plan setup is
// cheap at the sizes we run (N <= a few thousand) and results are
// bit-reproducible run to run.
std::vector<cdouble> dft_forward(const std::vector<cdouble>& x)
{
    Eigen::FFT<double> fft;
    std::vector<cdouble> out;
    fft.fwd(out, x);
    return out;
}

std::vector<cdouble> dft_inverse(const std::vector<cdouble>& x)
{
    Eigen::FFT<double> fft;
    std::vector<cdouble> out;
    fft.inv(out, x);
    return out;
}

std::vector<cdouble> dft_forward(const std::vector<double>& x)
{
    std::vector<cdouble> xc(x.begin(), x.end());
    return dft_forward(xc);
}

} // namespace nlchain
