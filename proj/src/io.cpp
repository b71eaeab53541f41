#include "mswave/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace mswave::io {

namespace {

double parse_real(const std::string& text, const std::string& what) {
    double value = 0.0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    if (begin != end && *begin == '+') {
        ++begin;  // from_chars rejects a leading plus
    }
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (begin == end || ec != std::errc{} || ptr != end) {
        throw ParseError("bad " + what + " literal: '" + text + "'");
    }
    return value;
}

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) {
        return {};
    }
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> tokens;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) {
        if (tok.front() == '#') {
            break;
        }
        tokens.push_back(tok);
    }
    return tokens;
}

std::string format_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

}  // namespace

Complex parse_complex(const std::string& raw) {
    const std::string text = trim(raw);
    if (text.empty()) {
        throw ParseError("empty complex literal");
    }
    if (text.back() != 'i') {
        return Complex{parse_real(text, "complex"), 0.0};
    }
    const std::string body = text.substr(0, text.size() - 1);
    // Split before the sign of the imaginary part: the last '+'/'-' that is
    // neither leading nor part of an exponent.
    std::size_t split = std::string::npos;
    for (std::size_t i = body.size(); i-- > 1;) {
        const char c = body[i];
        if ((c == '+' || c == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    auto imag_of = [&](const std::string& part) {
        if (part.empty() || part == "+") {
            return 1.0;
        }
        if (part == "-") {
            return -1.0;
        }
        return parse_real(part, "complex");
    };
    if (split == std::string::npos) {
        return Complex{0.0, imag_of(body)};
    }
    return Complex{parse_real(body.substr(0, split), "complex"), imag_of(body.substr(split))};
}

std::string format_complex(const Complex& z) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%.12g%+.12gi", z.real(), z.imag());
    return buf;
}

greens::GreenKind parse_green_kind(const std::string& token) {
    const auto colon = token.find(':');
    if (colon == std::string::npos) {
        throw ParseError("bad green kind '" + token + "': expected <dim>:<variant>");
    }
    const std::string dim = token.substr(0, colon);
    const std::string var = token.substr(colon + 1);
    int dimension = 0;
    if (dim == "1d") {
        dimension = 1;
    } else if (dim == "3d") {
        dimension = 3;
    } else {
        throw ParseError("bad green dimension '" + dim + "'");
    }
    greens::Variant variant;
    if (var == "out") {
        variant = greens::Variant::Outgoing;
    } else if (var == "in") {
        variant = greens::Variant::Ingoing;
    } else if (var == "cos") {
        variant = greens::Variant::CosStationary;
    } else if (var == "sin") {
        variant = greens::Variant::SinStationary;
    } else if (var == "e1") {
        variant = greens::Variant::E1Anisotropic;
    } else if (var == "e2") {
        variant = greens::Variant::E2Anisotropic;
    } else {
        throw ParseError("bad green variant '" + var + "'");
    }
    try {
        return greens::make_kind(dimension, variant);
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("bad green kind: ") + e.what());
    }
}

std::string format_green_kind(const greens::GreenKind& kind) {
    // Short tokens matching parse_green_kind, not the descriptive variant_name().
    std::string var;
    switch (kind.variant) {
        case greens::Variant::Outgoing: var = "out"; break;
        case greens::Variant::Ingoing: var = "in"; break;
        case greens::Variant::CosStationary: var = "cos"; break;
        case greens::Variant::SinStationary: var = "sin"; break;
        case greens::Variant::E1Anisotropic: var = "e1"; break;
        case greens::Variant::E2Anisotropic: var = "e2"; break;
    }
    if (var.empty()) {
        throw ParseError("cannot format unknown green variant");
    }
    return (kind.dimension == 1 ? std::string("1d:") : std::string("3d:")) + var;
}

namespace {

foldy::AmplitudeModel parse_amplitude(const std::vector<std::string>& tokens, std::size_t from,
                                      const std::string& where) {
    if (from >= tokens.size()) {
        throw ParseError(where + ": missing amplitude model");
    }
    const std::string& tag = tokens[from];
    if (tag == "const") {
        if (tokens.size() != from + 2) {
            throw ParseError(where + ": const amplitude takes exactly one complex value");
        }
        return foldy::ConstantAmplitude{parse_complex(tokens[from + 1])};
    }
    if (tag == "nuclear") {
        if (tokens.size() != from + 2) {
            throw ParseError(where + ": nuclear amplitude takes exactly one length");
        }
        return foldy::NuclearAmplitude{parse_real(tokens[from + 1], "scattering length")};
    }
    if (tag == "table") {
        foldy::TabulatedAmplitude table;
        for (std::size_t i = from + 1; i < tokens.size(); ++i) {
            const auto colon = tokens[i].find(':');
            if (colon == std::string::npos) {
                throw ParseError(where + ": table entries look like <k>:<complex>");
            }
            table.samples.emplace_back(parse_real(tokens[i].substr(0, colon), "table k"),
                                       parse_complex(tokens[i].substr(colon + 1)));
        }
        if (table.samples.size() < 2) {
            throw ParseError(where + ": table needs at least two samples");
        }
        for (std::size_t i = 1; i < table.samples.size(); ++i) {
            if (!(table.samples[i - 1].first < table.samples[i].first)) {
                throw ParseError(where + ": table k values must be strictly increasing");
            }
        }
        return table;
    }
    throw ParseError(where + ": unknown amplitude model '" + tag + "'");
}

std::string format_amplitude(const foldy::AmplitudeModel& model) {
    if (const auto* c = std::get_if<foldy::ConstantAmplitude>(&model)) {
        return "const " + format_complex(c->f);
    }
    if (const auto* n = std::get_if<foldy::NuclearAmplitude>(&model)) {
        return "nuclear " + format_real(n->b);
    }
    const auto& t = std::get<foldy::TabulatedAmplitude>(model);
    std::string out = "table";
    for (const auto& [k, f] : t.samples) {
        out += " " + format_real(k) + ":" + format_complex(f);
    }
    return out;
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open '" + path + "'");
    }
    return in;
}

}  // namespace

std::vector<foldy::Scatterer> load_ensemble(const std::string& path) {
    std::ifstream in = open_input(path);
    std::vector<foldy::Scatterer> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::vector<std::string> tokens = tokenize(line);
        if (tokens.empty()) {
            continue;
        }
        const std::string where = path + ":" + std::to_string(lineno);
        if (tokens.size() < 5) {
            throw ParseError(where + ": expected <x> <y> <z> <green> <amplitude...>");
        }
        foldy::Scatterer s;
        s.position = {parse_real(tokens[0], "x"), parse_real(tokens[1], "y"),
                      parse_real(tokens[2], "z")};
        s.green = parse_green_kind(tokens[3]);
        s.amplitude = parse_amplitude(tokens, 4, where);
        out.push_back(std::move(s));
    }
    if (out.empty()) {
        throw ParseError(path + ": no scatterers found");
    }
    return out;
}

void save_ensemble(const std::string& path, const std::vector<foldy::Scatterer>& scatterers) {
    std::ofstream out(path);
    if (!out) {
        throw ParseError("cannot write '" + path + "'");
    }
    out << "# x y z green amplitude\n";
    for (const auto& s : scatterers) {
        out << format_real(s.position.x) << ' ' << format_real(s.position.y) << ' '
            << format_real(s.position.z) << ' ' << format_green_kind(s.green) << ' '
            << format_amplitude(s.amplitude) << '\n';
    }
}

chain::ChainSpec load_chain(const std::string& path) {
    std::ifstream in = open_input(path);
    chain::ChainSpec spec;
    bool have_k = false;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::vector<std::string> tokens = tokenize(line);
        if (tokens.empty()) {
            continue;
        }
        const std::string where = path + ":" + std::to_string(lineno);
        if (tokens[0] == "k") {
            if (tokens.size() != 2) {
                throw ParseError(where + ": k line takes exactly one value");
            }
            spec.k = parse_real(tokens[1], "k");
            have_k = true;
        } else if (tokens[0] == "scatterer") {
            if (tokens.size() != 6) {
                throw ParseError(where + ": expected scatterer <pos> <rL> <rR> <tL> <tR>");
            }
            spec.positions.push_back(parse_real(tokens[1], "position"));
            spec.scatterers.push_back({parse_complex(tokens[2]), parse_complex(tokens[3]),
                                       parse_complex(tokens[4]), parse_complex(tokens[5])});
        } else {
            throw ParseError(where + ": unknown record '" + tokens[0] + "'");
        }
    }
    if (!have_k) {
        throw ParseError(path + ": missing k line");
    }
    try {
        chain::validate_chain(spec, 1);
    } catch (const std::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    return spec;
}

packet::SampledSpectrum load_spectrum(const std::string& path) {
    std::ifstream in = open_input(path);
    packet::SampledSpectrum spectrum;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::vector<std::string> tokens = tokenize(line);
        if (tokens.empty()) {
            continue;
        }
        const std::string where = path + ":" + std::to_string(lineno);
        if (tokens.size() != 3) {
            throw ParseError(where + ": expected <k> <re> <im>");
        }
        spectrum.samples.emplace_back(
            parse_real(tokens[0], "k"),
            Complex{parse_real(tokens[1], "re"), parse_real(tokens[2], "im")});
    }
    if (spectrum.samples.size() < 2) {
        throw ParseError(path + ": need at least two spectrum samples");
    }
    for (std::size_t i = 1; i < spectrum.samples.size(); ++i) {
        if (!(spectrum.samples[i - 1].first < spectrum.samples[i].first)) {
            throw ParseError(path + ": spectrum k values must be strictly increasing");
        }
    }
    return spectrum;
}

void save_chain(const std::string& path, const chain::ChainSpec& chain) {
    std::ofstream out(path);
    if (!out) {
        throw ParseError("cannot write '" + path + "'");
    }
    out << "k " << format_real(chain.k) << '\n';
    out << "# scatterer <position> <rL> <rR> <tL> <tR>\n";
    for (std::size_t i = 0; i < chain.scatterers.size(); ++i) {
        const auto& s = chain.scatterers[i];
        out << "scatterer " << format_real(chain.positions[i]) << ' ' << format_complex(s.rL)
            << ' ' << format_complex(s.rR) << ' ' << format_complex(s.tL) << ' '
            << format_complex(s.tR) << '\n';
    }
}

}  // namespace mswave::io
