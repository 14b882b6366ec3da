// Compares two Hermitian matrices by sorted eigenvalues and by inertia counts.
#include <iostream>

#include <herminertia/herminertia.hpp>

using namespace herminertia;

int main() {
    const auto a = make_hermitian<Complex>(3, {4.0, Complex(1, 1), 0.0, 1.0, Complex(0, 2), -2.0});
    std::vector<Complex> alpha{Complex(1, 0), Complex(0, 1), Complex(2, 0)};
    const auto b = rank_one_update(a, alpha);

    std::cout << "eig(A):";
    for (double v : eigenvalues(a).values) std::cout << ' ' << v;
    std::cout << "\neig(A + aa*):";
    for (double v : eigenvalues(b).values) std::cout << ' ' << v;
    std::cout << "\n";

    // both methods; throws if they disagree
    std::cout << "A interlaces A + aa*: " << detail::describe(matrix_interlaces(a, b)) << "\n";
    for (long m = -1; m <= 1; ++m)
        std::cout << "lambda_{i" << (m < 0 ? "" : "+") << m << "}(A) <= lambda_i(A + aa*): "
                  << detail::describe(matrix_shift_dominates(b, a, m)) << "\n";
    std::cout << "inertia(A - I) = " << to_string(shifted_inertia(a, 1.0, Mode::floating)) << "\n";
}
