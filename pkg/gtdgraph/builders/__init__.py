from .static import casualties
from .static import build_event_graph
from .static import build_group_weapon_graph
from .static import build_weapon_projection
from .temporal import EraSpec, DEFAULT_ERAS, DyadCount
from .temporal import build_association_graph
from .temporal import build_lethality_graph
from .temporal import build_group_ego_timeline
from .temporal import summarize_ego_timeline
from .temporal import count_temporal_dyads, dyads_to_frame
from .temporal import yearly_frequency
