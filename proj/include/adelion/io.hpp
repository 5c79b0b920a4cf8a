#ifndef ADELION_IO_HPP
#define ADELION_IO_HPP

#include <json.hpp>

#include "adelion/adelic.hpp"
#include "adelion/operators.hpp"

namespace adelion {

using nlohmann::json;

json to_json(const Rat& q);
Rat rat_from_json(const json& j);

json to_json(const Complex& c);
Complex complex_from_json(const json& j);

json to_json(const Ball& b);
Ball ball_from_json(const json& j);

json to_json(const LocalFunction& f);
LocalFunction local_from_json(const json& j);

json to_json(const DyadicStep& f);
DyadicStep dyadic_from_json(const json& j);

json to_json(const AdelicTensor& t);
AdelicTensor tensor_from_json(const json& j);

json to_json(const AdelicFunction& f);
AdelicFunction adelic_from_json(const json& j);

json to_json(const AdelicIndex& idx);
AdelicIndex index_from_json(const json& j);

json to_json(const Symbol& s);
Symbol symbol_from_json(const json& j);

/// Tagged wrapper used by the CLI: {"type": "local"|"real"|"adelic", ...}.
json tagged(const LocalFunction& f);
json tagged(const DyadicStep& f);
json tagged(const AdelicFunction& f);

}  // namespace adelion

#endif
