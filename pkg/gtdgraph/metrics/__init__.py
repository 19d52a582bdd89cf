from .gtd_metrics import RankedList
from .gtd_metrics import top_k_lethal
from .gtd_metrics import era_metrics
from .gtd_metrics import association_hubs
