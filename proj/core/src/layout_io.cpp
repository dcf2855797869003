#include "mfp/nodegen.hpp"

#include <charconv>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace mfp {

void write_layout(std::ostream& os, const NodeLayout& layout) {
    os << "# N=" << layout.size() << " domain=" << layout.domain.name() << '\n';
    const auto old_precision = os.precision(17);
    for (std::size_t i = 0; i < layout.size(); ++i) {
        os << layout.nodes[i].x << ' ' << layout.nodes[i].y << ' ' << role_tag(layout.roles[i]) << '\n';
    }
    os.precision(old_precision);
}

NodeLayout read_layout(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line.rfind("# N=", 0) != 0) {
        throw std::runtime_error("layout file: missing '# N=<count> domain=<kind>' header");
    }
    std::size_t count = 0;
    std::string domain_name;
    {
        std::istringstream header(line.substr(4));
        std::string domain_field;
        header >> count >> domain_field;
        if (!header || domain_field.rfind("domain=", 0) != 0) {
            throw std::runtime_error("layout file: malformed header: " + line);
        }
        domain_name = domain_field.substr(7);
    }

    NodeLayout layout;
    layout.domain = parse_domain_kind(domain_name) == DomainKind::triangle ? Domain2D::triangle(1.0)
                                                                          : Domain2D::rectangle(1.0, 1.0);
    layout.kind = LayoutKind::smooth;
    layout.nodes.reserve(count);
    layout.roles.reserve(count);
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream row(line);
        Point2 p;
        std::string tag;
        row >> p.x >> p.y >> tag;
        if (!row) throw std::runtime_error("layout file: malformed node line: " + line);
        layout.nodes.push_back(p);
        layout.roles.push_back(parse_role_tag(tag));
    }
    if (layout.size() != count) {
        throw std::runtime_error("layout file: header count " + std::to_string(count) + " but " +
                                 std::to_string(layout.size()) + " nodes listed");
    }
    return layout;
}

}  // namespace mfp
