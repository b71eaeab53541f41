#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "mswave/chain.hpp"
#include "mswave/foldy.hpp"
#include "mswave/packet.hpp"
#include "mswave/types.hpp"

namespace mswave::io {

// Malformed input text; carries file and line context in the message.
class ParseError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Complex literals in "re+imi" form: "1.5", "-2i", "0.5-0.25i".
Complex parse_complex(const std::string& text);
std::string format_complex(const Complex& z);

// Ensemble files: one scatterer per line,
//   <x> <y> <z> <green> <amplitude...>
// green is 1d:out|1d:in|1d:cos|1d:sin|1d:e1|1d:e2|3d:out|3d:in|3d:cos|3d:sin;
// amplitude is `const <complex>`, `nuclear <b>`, or `table <k>:<complex>...`.
// '#' starts a comment; blank lines are skipped.
std::vector<foldy::Scatterer> load_ensemble(const std::string& path);
void save_ensemble(const std::string& path, const std::vector<foldy::Scatterer>& scatterers);

greens::GreenKind parse_green_kind(const std::string& token);
std::string format_green_kind(const greens::GreenKind& kind);

// Chain files: `k <real>` once, then one `scatterer <pos> <rL> <rR> <tL> <tR>`
// line per scatterer, positions strictly increasing.
chain::ChainSpec load_chain(const std::string& path);
void save_chain(const std::string& path, const chain::ChainSpec& chain);

// Sampled spectra: `<k> <re> <im>` rows with strictly increasing k.
packet::SampledSpectrum load_spectrum(const std::string& path);

}  // namespace mswave::io
