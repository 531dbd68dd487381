"""mindtype: a hands-free predictive keyboard driven by simulated
brain-signal events, with an emotion-aware word predictor and a full
typing-metrics suite."""

from .bigram import BigramModel, count_corpus
from .config import AppConfig, config_hash, load_config, parse_config
from .emotion import (
    EmotionLexicon,
    EmotionMapping,
    EmotionState,
    PerformanceMetrics,
    classify_emotion,
)
from .engine import Engine, ReplayError, replay
from .events import SessionEvent, SessionHeader, SessionLog
from .keyboard import (
    KeyboardLayout,
    KeyboardState,
    NavCommand,
    commit_selection,
    commit_word,
    initial_layout,
    initial_state,
    move_focus,
    page_more,
    relayout_after,
    shift_section,
)
from .metrics import (
    MetricsReport,
    accuracy,
    ease,
    itr_commands,
    itr_letters,
    latency_stats,
    report_from_log,
    typing_rates,
)
from .predict import (
    AutocompleteIndex,
    HelpingVerbModel,
    OnlineLearner,
    RetrainPolicy,
    autocomplete,
    emotion_gated_predictions,
    predict_helping_verb,
    predict_words,
)
from .rnn import RnnModel, TrainingBatch, TrainingDivergedError, sequence_probability, train
from .signals import (
    BlinkSelector,
    Command,
    CommandTemplate,
    DetectorConfig,
    Expression,
    ExpressionEvent,
    MotorImagery,
    MotorImageryEvent,
    SignalWindow,
    detect_command,
    detect_selection,
    standard_templates,
    synthesize_window,
)
from .simulate import SimulatedUser, bench_layouts, run_session
from .vocab import Vocabulary, tokenize

__version__ = "0.1.0"

__all__ = [
    "AppConfig",
    "AutocompleteIndex",
    "BigramModel",
    "BlinkSelector",
    "Command",
    "CommandTemplate",
    "DetectorConfig",
    "EmotionLexicon",
    "EmotionMapping",
    "EmotionState",
    "Engine",
    "Expression",
    "ExpressionEvent",
    "HelpingVerbModel",
    "KeyboardLayout",
    "KeyboardState",
    "MetricsReport",
    "MotorImagery",
    "MotorImageryEvent",
    "NavCommand",
    "OnlineLearner",
    "PerformanceMetrics",
    "ReplayError",
    "RetrainPolicy",
    "RnnModel",
    "SessionEvent",
    "SessionHeader",
    "SessionLog",
    "SignalWindow",
    "SimulatedUser",
    "TrainingBatch",
    "TrainingDivergedError",
    "Vocabulary",
    "accuracy",
    "autocomplete",
    "bench_layouts",
    "classify_emotion",
    "commit_selection",
    "commit_word",
    "config_hash",
    "count_corpus",
    "detect_command",
    "detect_selection",
    "ease",
    "emotion_gated_predictions",
    "initial_layout",
    "initial_state",
    "itr_commands",
    "itr_letters",
    "latency_stats",
    "load_config",
    "move_focus",
    "page_more",
    "parse_config",
    "predict_helping_verb",
    "predict_words",
    "relayout_after",
    "replay",
    "report_from_log",
    "run_session",
    "sequence_probability",
    "shift_section",
    "standard_templates",
    "synthesize_window",
    "tokenize",
    "train",
    "typing_rates",
]
