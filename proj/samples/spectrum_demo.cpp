// Prints the four lowest levels at both n = 1 truncation roots and marks
// the one level each truncation actually reproduces.
#include <cstdio>

#include "qes/qes.hpp"

int main()
{
    for (double s : {0.0, 1.0}) {
        auto const sol = qes::truncate(1, s);
        for (int i = 1; i <= 2; ++i) {
            double const theta = sol.roots[static_cast<std::size_t>(i - 1)];
            auto const res = qes::solve({s, theta}, 16, 4);
            std::printf("s = %g  theta = %+.10f :", s, theta);
            for (int j = 0; j < 4; ++j) {
                double const w = res.eigenvalues[static_cast<std::size_t>(j)];
                std::printf("  %12.9f%s", w, j == i - 1 ? "*" : " ");
            }
            std::printf("\n");
        }
    }
    std::printf("* = truncation eigenvalue W = 2(n+s+1); every other level is missed by the truncation\n");
    return 0;
}
