#pragma once

#include "eai/attribution.hpp"
#include "eai/campaign.hpp"
#include "eai/dataset.hpp"
#include "eai/eai_metric.hpp"
#include "eai/models.hpp"
#include "eai/report.hpp"
