// Deletes each arc of a small digraph in turn and reports the two spectral verdicts.
#include <iostream>

#include <herminertia/herminertia.hpp>

using namespace herminertia;

int main() {
    const auto g = io::parse_graph("graph v1 n=4\narc 0 1\narc 1 2\ndigon 2 3\narc 3 0 weight=2\n");
    for (std::size_t k = 0; k < g.records().size(); ++k) {
        const theorems::DeletionInput in{g, k, OperatorKind::herm_laplacian_omega, std::nullopt};
        const auto out = theorems::deletion_outcome(in);
        std::cout << "record " << k << ": c = " << to_string(out.difference.c)
                  << ", laplacian " << detail::describe(out.interlace)
                  << ", normalized compatible " << detail::describe(out.compatible) << "\n";
    }
    std::cout << "inertia of the Laplacian: " << to_string(inertia_exact(build_exact(g, OperatorKind::herm_laplacian_omega))) << "\n";
}
