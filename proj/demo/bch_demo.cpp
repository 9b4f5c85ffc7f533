// Prints log(e^X e^Y) through degree 5 by three routes and checks they agree.
#include <iostream>

#include "mouldlab/bch.hpp"
#include "mouldlab/io.hpp"

int main() {
  using namespace mouldlab;
  const int degree = 5;
  const NcSeries kimura = kimura_log(2, degree);
  std::cout << io::series_to_text(kimura);

  const bool same = kimura == dynkin_log(2, degree) && kimura == direct_log(2, degree);
  std::cout << "kimura = dynkin = direct: " << (same ? "yes" : "no") << '\n';
  std::cout << "Lie element: " << dsw_check(kimura).describe() << '\n';

  std::cout << "\nT_N through weight 4:\n" << io::mould_to_text(make_T_N(4));
  return same ? 0 : 1;
}
