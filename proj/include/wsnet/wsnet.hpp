#pragma once

#include "wsnet/community_detect.hpp"
#include "wsnet/community_metrics.hpp"
#include "wsnet/graph.hpp"
#include "wsnet/graph_algorithms.hpp"
#include "wsnet/graph_io.hpp"
#include "wsnet/ingestion.hpp"
#include "wsnet/modularity.hpp"
#include "wsnet/network_builder.hpp"
#include "wsnet/partition.hpp"
#include "wsnet/power_law.hpp"
#include "wsnet/service_model.hpp"
#include "wsnet/synth_gen.hpp"
#include "wsnet/topology.hpp"
