#include "hbnqm/defect_label.hpp"

#include <array>
#include <cctype>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace hbnqm {

namespace {

const std::unordered_set<std::string_view>& element_symbols() {
    static const std::unordered_set<std::string_view> symbols = {
        "H",  "He", "Li", "Be", "B",  "C",  "N",  "O",  "F",  "Ne", "Na", "Mg", "Al", "Si",
        "P",  "S",  "Cl", "Ar", "K",  "Ca", "Sc", "Ti", "Cr", "Mn", "Fe", "Co", "Ni", "Cu",
        "Zn", "Ga", "Ge", "As", "Se", "Br", "Kr", "Rb", "Sr", "Y",  "Zr", "Nb", "Mo", "Tc",
        "Ru", "Rh", "Pd", "Ag", "Cd", "In", "Sn", "Sb", "Te", "I",  "Xe", "Cs", "Ba", "La",
        "Ce", "Pr", "Nd", "Pm", "Sm", "Eu", "Gd", "Tb", "Dy", "Ho", "Er", "Tm", "Yb", "Lu",
        "Hf", "Ta", "W",  "Re", "Os", "Ir", "Pt", "Au", "Hg", "Tl", "Pb", "Bi", "Po", "At",
        "Rn", "Fr", "Ra", "Ac", "Th", "Pa", "U",  "Np", "Pu"};
    // "V" (vanadium) is deliberately absent: a bare V is always a vacancy
    // in this nomenclature.
    return symbols;
}

[[noreturn]] void fail(std::string_view text, std::size_t offset, const std::string& what) {
    std::ostringstream msg;
    msg << "defect label \"" << text << "\": " << what << " at byte " << offset;
    throw std::invalid_argument(msg.str());
}

struct Cursor {
    std::string_view text;
    std::size_t pos = 0;

    void skip_separators() {
        while (pos < text.size() && (text[pos] == '_' || std::isspace(
                                         static_cast<unsigned char>(text[pos])))) {
            ++pos;
        }
    }
    bool done() {
        skip_separators();
        return pos >= text.size();
    }
    char peek() const { return text[pos]; }
};

int parse_digits(Cursor& cur, const char* what) {
    const std::size_t begin = cur.pos;
    long value = 0;
    while (cur.pos < cur.text.size() && std::isdigit(static_cast<unsigned char>(cur.peek()))) {
        value = value * 10 + (cur.peek() - '0');
        if (value > 1000000) fail(cur.text, begin, std::string(what) + " out of range");
        ++cur.pos;
    }
    if (cur.pos == begin) fail(cur.text, begin, std::string("expected digits for ") + what);
    return static_cast<int>(value);
}

} // namespace

std::string DefectLabel::str() const {
    std::string out;
    for (const LabelConstituent& c : constituents) {
        out += c.species;
        out += '_';
        out += c.site;
    }
    if (charge != 0) {
        out += "^{";
        out += (charge > 0 ? '+' : '-');
        out += std::to_string(charge > 0 ? charge : -charge);
        out += '}';
    }
    if (conformer) {
        out += '-';
        out += std::to_string(*conformer);
    }
    return out;
}

DefectLabel parse_defect_label(std::string_view text) {
    DefectLabel label;
    Cursor cur{text};

    while (!cur.done()) {
        const char c = cur.peek();
        if (c == '^' || c == '+') break;     // charge section
        if (c == '-') break;                 // conformer section
        if (!std::isupper(static_cast<unsigned char>(c))) {
            fail(text, cur.pos, std::string("unexpected character '") + c + "'");
        }

        // Species: uppercase letter plus lowercase tail, optionally behind
        // a literal "C-" cluster prefix.
        const std::size_t species_begin = cur.pos;
        std::string species(1, c);
        ++cur.pos;
        if (species == "C" && cur.pos < cur.text.size() && cur.peek() == '-' &&
            cur.pos + 1 < cur.text.size() &&
            std::isupper(static_cast<unsigned char>(cur.text[cur.pos + 1]))) {
            species += '-';
            species += cur.text[cur.pos + 1];
            cur.pos += 2;
        }
        while (cur.pos < cur.text.size() &&
               std::islower(static_cast<unsigned char>(cur.peek()))) {
            species += cur.peek();
            ++cur.pos;
        }

        cur.skip_separators();
        if (cur.pos >= cur.text.size()) {
            fail(text, cur.pos, "missing site after species \"" + species + "\"");
        }
        const std::size_t site_begin = cur.pos;
        const char site = cur.peek();
        if (site != 'B' && site != 'N') {
            fail(text, site_begin,
                 std::string("invalid site '") + site + "' (expected B or N)");
        }
        ++cur.pos;
        // A lowercase continuation means this was not a site letter at all.
        if (cur.pos < cur.text.size() && std::islower(static_cast<unsigned char>(cur.peek()))) {
            fail(text, site_begin, "invalid site token");
        }

        std::string_view bare = species;
        if (bare.size() > 2 && bare[1] == '-') bare = bare.substr(2); // strip cluster prefix
        if (bare != "V" && !element_symbols().contains(bare)) {
            fail(text, species_begin, "unknown element \"" + species + "\"");
        }
        label.constituents.push_back({species, site});
    }

    if (label.constituents.empty()) fail(text, 0, "no constituents");

    if (!cur.done() && (cur.peek() == '^' || cur.peek() == '+')) {
        const std::size_t charge_begin = cur.pos;
        int sign = +1;
        if (cur.peek() == '^') {
            ++cur.pos;
            bool braced = false;
            if (cur.pos < cur.text.size() && cur.peek() == '{') {
                braced = true;
                ++cur.pos;
            }
            if (cur.pos >= cur.text.size() || (cur.peek() != '+' && cur.peek() != '-')) {
                fail(text, cur.pos, "expected charge sign after '^'");
            }
            sign = cur.peek() == '+' ? +1 : -1;
            ++cur.pos;
            label.charge = sign * parse_digits(cur, "charge");
            if (braced) {
                if (cur.pos >= cur.text.size() || cur.peek() != '}') {
                    fail(text, cur.pos, "unterminated charge brace");
                }
                ++cur.pos;
            }
            (void)charge_begin;
        } else { // bare "+n"
            ++cur.pos;
            label.charge = parse_digits(cur, "charge");
        }
    }

    if (!cur.done() && cur.peek() == '-') {
        ++cur.pos;
        label.conformer = parse_digits(cur, "conformer");
    }

    if (!cur.done()) {
        fail(text, cur.pos, std::string("trailing input starting at '") + cur.peek() + "'");
    }
    return label;
}

} // namespace hbnqm
