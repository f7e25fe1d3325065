// A-hat genus of two Chern roots and the degree-2 index density with a twist.

#include <iostream>

#include "rcatk/charclasses.hpp"

int main()
{
    using namespace rcatk;
    const unsigned order = 4;
    const std::vector<GradedSeries> roots{GradedSeries::symbol("t1", order), GradedSeries::symbol("t2", order)};
    for (const auto& line : series_lines(series_a_hat(roots, order)))
        std::cout << line << "\n";

    CurvatureData cd;
    cd.tangent_roots = roots;
    cd.theta = GradedSeries::symbol("th", order);
    cd.normal = GradedSeries::symbol("rN", order);
    const auto d = index_density(cd, 2, 0, TraceFunctional::from_eigen_weights(frac(1, 2), -1, 3));
    std::cout << "density:\n";
    for (const auto& line : series_lines(d.density))
        std::cout << "  " << line << "\n";
}
