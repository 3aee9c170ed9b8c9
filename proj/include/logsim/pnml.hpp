#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "logsim/petrinet.hpp"

namespace logsim {

// Reads a PNML document (ISO/IEC 15909-2 place/transition vocabulary) with a
// single net and at most one page. Graphics and tool-specific data are
// ignored except the ProM "$invisible$" marker, which makes a transition
// silent. Node names are taken from the <name> text when it is unique among
// nodes of the same kind, and from the XML id otherwise.
// Throws PnmlError on malformed or unexpected XML and WorkflowNetError when
// the net has no unique source/sink place.
PetriNet import_pnml(std::istream& in);
PetriNet import_pnml(std::string_view text);

void export_pnml(std::ostream& out, const PetriNet& net);
std::string export_pnml(const PetriNet& net);

}  // namespace logsim
