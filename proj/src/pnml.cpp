#include "logsim/pnml.hpp"

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include <map>
#include <set>
#include <sstream>

#include "logsim/error.hpp"

namespace logsim {
namespace {

namespace pt = boost::property_tree;

constexpr std::string_view kPtNetType = "http://www.pnml.org/version-2009/grammar/ptnet";

std::string attr(const pt::ptree& node, const std::string& key) {
    return node.get<std::string>("<xmlattr>." + key, "");
}

std::optional<std::string> name_text(const pt::ptree& node) {
    if (auto t = node.get_optional<std::string>("name.text")) {
        return *t;
    }
    return std::nullopt;
}

bool is_invisible(const pt::ptree& node) {
    for (const auto& [tag, child] : node) {
        if (tag == "toolspecific" && attr(child, "activity") == "$invisible$") {
            return true;
        }
    }
    return false;
}

void escape_into(std::string& out, std::string_view text) {
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out.push_back(c);
        }
    }
}

}  // namespace

PetriNet import_pnml(std::istream& in) {
    pt::ptree doc;
    try {
        pt::read_xml(in, doc, pt::xml_parser::trim_whitespace);
    } catch (const pt::xml_parser_error& e) {
        throw PnmlError(std::string("malformed XML: ") + e.what());
    }
    const auto root = doc.get_child_optional("pnml");
    if (!root || doc.size() != 1) {
        throw PnmlError("document root is not <pnml>");
    }
    const pt::ptree* net_node = nullptr;
    for (const auto& [tag, child] : *root) {
        if (tag == "net") {
            if (net_node) {
                throw PnmlError("more than one <net> element");
            }
            net_node = &child;
        }
    }
    if (!net_node) {
        throw PnmlError("no <net> element");
    }
    const pt::ptree* page = net_node;
    for (const auto& [tag, child] : *net_node) {
        if (tag == "page") {
            if (page != net_node) {
                throw PnmlError("more than one <page> element");
            }
            page = &child;
        }
    }

    // Collect first so arcs may precede the nodes they reference.
    struct RawPlace { std::string id; std::optional<std::string> name; };
    struct RawTransition { std::string id; std::optional<std::string> name; std::optional<std::string> label; };
    struct RawArc { std::string source, target; };
    std::vector<RawPlace> raw_places;
    std::vector<RawTransition> raw_transitions;
    std::vector<RawArc> raw_arcs;
    for (const auto& [tag, child] : *page) {
        if (tag == "place") {
            raw_places.push_back({attr(child, "id"), name_text(child)});
        } else if (tag == "transition") {
            auto name = name_text(child);
            auto label = name;
            if (is_invisible(child) || (label && label->empty())) {
                label.reset();
            }
            raw_transitions.push_back({attr(child, "id"), std::move(name), std::move(label)});
        } else if (tag == "arc") {
            if (auto w = child.get_optional<std::string>("inscription.text"); w && *w != "1") {
                throw PnmlError("arc weight '" + *w + "' unsupported; only ordinary nets are accepted");
            }
            raw_arcs.push_back({attr(child, "source"), attr(child, "target")});
        }
    }

    // Node names come from <name> when that text is unique within its kind
    // and cannot be confused with another node's id; otherwise from the id.
    std::map<std::string, int> name_uses;
    std::set<std::string> place_ids;
    for (const auto& p : raw_places) {
        place_ids.insert(p.id);
        if (p.name) {
            ++name_uses[*p.name];
        }
    }
    std::map<std::string, int> transition_name_uses;
    std::set<std::string> transition_ids;
    for (const auto& t : raw_transitions) {
        transition_ids.insert(t.id);
        if (t.name) {
            ++transition_name_uses[*t.name];
        }
    }

    PetriNet::Builder builder;
    std::map<std::string, PlaceId> places;
    std::map<std::string, TransitionId> transitions;
    std::set<std::string> ids;
    auto claim = [&](const std::string& id) {
        if (id.empty()) {
            throw PnmlError("node without id");
        }
        if (!ids.insert(id).second) {
            throw PnmlError("duplicate id '" + id + "'");
        }
    };
    for (const auto& p : raw_places) {
        claim(p.id);
        const bool use_name = p.name && !p.name->empty() && name_uses[*p.name] == 1 &&
                              (*p.name == p.id || !place_ids.count(*p.name));
        places.emplace(p.id, builder.add_place(use_name ? *p.name : p.id));
    }
    for (const auto& t : raw_transitions) {
        claim(t.id);
        const bool use_name = t.name && !t.name->empty() && transition_name_uses[*t.name] == 1 &&
                              (*t.name == t.id || !transition_ids.count(*t.name));
        transitions.emplace(t.id, builder.add_transition(use_name ? *t.name : t.id, t.label));
    }
    for (const auto& a : raw_arcs) {
        auto ps = places.find(a.source);
        auto tt = transitions.find(a.target);
        if (ps != places.end() && tt != transitions.end()) {
            builder.add_arc(ps->second, tt->second);
            continue;
        }
        auto ts = transitions.find(a.source);
        auto pt_ = places.find(a.target);
        if (ts != transitions.end() && pt_ != places.end()) {
            builder.add_arc(ts->second, pt_->second);
            continue;
        }
        throw PnmlError("arc " + a.source + " -> " + a.target +
                        " does not connect a place and a transition of this net");
    }
    return std::move(builder).build();
}

PetriNet import_pnml(std::string_view text) {
    std::istringstream in{std::string(text)};
    return import_pnml(in);
}

void export_pnml(std::ostream& out, const PetriNet& net) {
    std::string buf;
    buf += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<pnml>\n";
    buf += "  <net id=\"net1\" type=\"";
    buf += kPtNetType;
    buf += "\">\n    <page id=\"n0\">\n";
    for (std::size_t i = 0; i < net.places().size(); ++i) {
        buf += "      <place id=\"p" + std::to_string(i) + "\">\n        <name>\n          <text>";
        escape_into(buf, net.places()[i].name);
        buf += "</text>\n        </name>\n";
        if (static_cast<PlaceId>(i) == net.source()) {
            buf += "        <initialMarking>\n          <text>1</text>\n        </initialMarking>\n";
        }
        buf += "      </place>\n";
    }
    for (std::size_t i = 0; i < net.transitions().size(); ++i) {
        const auto& t = net.transitions()[i];
        const std::string id = "t" + std::to_string(i);
        buf += "      <transition id=\"" + id + "\">\n        <name>\n          <text>";
        escape_into(buf, t.label ? *t.label : t.name);
        buf += "</text>\n        </name>\n";
        if (t.silent()) {
            buf += "        <toolspecific tool=\"ProM\" version=\"6.4\" activity=\"$invisible$\" "
                   "localNodeID=\"" + id + "\"/>\n";
        }
        buf += "      </transition>\n";
    }
    std::size_t arc = 0;
    auto write_arc = [&](const std::string& from, const std::string& to) {
        buf += "      <arc id=\"a" + std::to_string(arc++) + "\" source=\"" + from + "\" target=\"" +
               to + "\"/>\n";
    };
    for (std::size_t i = 0; i < net.transitions().size(); ++i) {
        const auto& t = net.transitions()[i];
        for (auto p : t.inputs) {
            write_arc("p" + std::to_string(index_of(p)), "t" + std::to_string(i));
        }
        for (auto p : t.outputs) {
            write_arc("t" + std::to_string(i), "p" + std::to_string(index_of(p)));
        }
    }
    buf += "    </page>\n    <finalmarkings>\n      <marking>\n        <place idref=\"p" +
           std::to_string(index_of(net.sink())) +
           "\">\n          <text>1</text>\n        </place>\n      </marking>\n    </finalmarkings>\n";
    buf += "  </net>\n</pnml>\n";
    out << buf;
}

std::string export_pnml(const PetriNet& net) {
    std::ostringstream out;
    export_pnml(out, net);
    return out.str();
}

}  // namespace logsim
