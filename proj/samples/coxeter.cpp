// Prints degrees, Coxeter number and a Coxeter element's spectrum for a group file.

#include <iostream>

#include "rcatk/group_io.hpp"
#include "rcatk/reflection.hpp"

int main(int argc, char** argv)
{
    if (argc != 2) {
        std::cerr << "usage: coxeter <group file>\n";
        return 2;
    }
    try {
        const auto g = rcatk::load_group(argv[1]);
        const auto rs = rcatk::find_reflections(g);
        std::cout << "|G| = " << g.order() << ", reflections = " << rs.reflections.size() << "\n";
        std::cout << "degrees:";
        for (auto d : rcatk::molien_degrees(g))
            std::cout << " " << d;
        std::cout << "\n";
        const auto c = rcatk::find_coxeter_element(g, rs);
        std::cout << "h = " << c.coxeter_number << ", element " << c.element << " has eigenvalues";
        for (const auto& [q, m] : rcatk::eigenvalue_spectrum(g, c.element))
            std::cout << " exp(2 pi i " << rcatk::to_string(q) << ")^" << m;
        std::cout << "\n";
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
    return 0;
}
