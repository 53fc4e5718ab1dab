#include "nonrigid/codes.hpp"

#include "nonrigid/error.hpp"

#include <fstream>
#include <sstream>

namespace nonrigid {

F2Matrix parse_code_rows(std::istream& in) {
    std::vector<F2Vector> rows;
    std::size_t width = 0;
    std::size_t first_row_line = 0;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto begin = line.find_first_not_of(" \t\r");
        if (begin == std::string::npos) continue;
        const auto end = line.find_last_not_of(" \t\r");
        const std::string_view text = std::string_view(line).substr(begin, end - begin + 1);
        if (text.front() == '#') continue;

        for (char ch : text) {
            if (ch != '0' && ch != '1') {
                throw ParseError("unexpected character '" + std::string(1, ch) + "' (rows are strings over {0,1})",
                                 line_no);
            }
        }
        if (rows.empty()) {
            width = text.size();
            first_row_line = line_no;
        } else if (text.size() != width) {
            throw ParseError("row has length " + std::to_string(text.size()) + " but line " +
                                 std::to_string(first_row_line) + " has length " + std::to_string(width),
                             line_no);
        }
        rows.push_back(F2Vector::from_string(text));
    }
    if (rows.empty()) throw ParseError("no generator rows", 0);
    return F2Matrix(width, std::move(rows));
}

BinaryCode read_code_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw PreconditionError("cannot open code file '" + path + "'");
    return code_from_generators(parse_code_rows(in));
}

std::string format_code(const BinaryCode& c, std::string_view comment) {
    std::ostringstream out;
    if (!comment.empty()) out << "# " << comment << '\n';
    for (const auto& r : c.basis().row_vectors()) out << r.to_string() << '\n';
    // the zero code still needs one row to carry its length
    if (c.dim() == 0) out << F2Vector(c.length()).to_string() << '\n';
    return out.str();
}

}  // namespace nonrigid
