#ifndef KEYGRAPH_KEYGRAPH_HPP
#define KEYGRAPH_KEYGRAPH_HPP

#include "keygraph/graph.hpp"
#include "keygraph/text.hpp"
#include "keygraph/builders.hpp"
#include "keygraph/centrality.hpp"
#include "keygraph/ranking.hpp"
#include "keygraph/baselines.hpp"
#include "keygraph/pipeline.hpp"
#include "keygraph/eval.hpp"

#endif  // KEYGRAPH_KEYGRAPH_HPP
