// Walks the expanding map on the Klein bottle group: relations, spectrum,
// abelianization, linearization and the bounded conjugacy search.

#include <flatendo/flatendo.hpp>

#include <iostream>

using namespace flatendo;

int main(int argc, char** argv) {
  const std::string corpus = argc > 1 ? argv[1] : FLATENDO_CORPUS_DIR;
  CrystGroup K = io::build_group(io::read_group_spec(corpus + "/klein.json"));
  AffineMap alpha = io::read_affine_map(corpus + "/klein_alpha.json");
  const AffineMap &a = K.generators()[0], &b = K.generators()[1];

  std::cout << "alpha = " << alpha.to_string() << "\n";
  EndoStatus st = conjugation_endo(K, alpha);
  std::cout << "induces an endomorphism: " << (st.induces ? "yes" : "no")
            << ", automorphism: " << (st.is_automorphism ? "yes" : "no") << "\n";
  std::cout << "alpha a alpha^-1 = a^3: " << (conjugate(alpha, a) == power(a, 3) ? "yes" : "no") << "\n";
  std::cout << "alpha b alpha^-1 = a b^3: " << (conjugate(alpha, b) == compose(a, power(b, 3)) ? "yes" : "no") << "\n";

  SpectralClass s = classify_spectrum(alpha);
  std::cout << "char poly " << s.char_poly.to_string() << ", expanding " << (s.expanding ? "yes" : "no") << "\n";

  Linearization lin = linearize_at_fixed_point(K, alpha);
  std::cout << "fixed point " << to_string(lin.fixed_point) << ", linear model " << to_string(lin.delta) << "\n";

  QuotientMap ab = induced_on_quotient(K, alpha, {});
  std::cout << "abelianization " << ab.quotient.to_string() << ", alpha acts by " << to_string(ab.matrix) << "\n";

  ObstructionReport rep = obstruction_search(K, alpha, QuotientSpec::mod(4), 5);
  std::cout << "mod 4 quotient: " << rep.candidates_tested << " linear candidates, "
            << rep.search_bounds.quotient_automorphisms << " quotient automorphisms, intertwiner "
            << (rep.intertwiner_found ? "found" : "not found") << "\n";
  return 0;
}
