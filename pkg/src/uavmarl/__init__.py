"""Independent Q-learning resource allocation for multi-UAV downlink networks."""

from .baselines import build_preferences, gale_shapley, random_policy, run_baseline
from .env import AgentObservation, Environment, GameState, action_space_size
from .learn import LearningConfig, learning_rate, q_update, run_episode, select_action
from .metrics import EpisodeLog, RewardSeries, cumulative_reward, episode_series, fleet_series, write_csv
from .radio import Action, PowerLevels, RewardParams, power_levels_from_max
from .scenario import ConfigError, Scenario, dump_scenario, load_scenario, parse_scenario

__version__ = "0.1.0"
