/** Wire schemas of the annotation engine. These mirror the JSON the service emits. */

export interface Cue {
    index: number;
    start_ms: number;
    end_ms: number;
    text: string;
}

export interface Segment {
    segment_index: number;
    cue_indices: number[];
    start_ms: number;
    end_ms: number;
    title: string;
}

export interface SmartTitle {
    term: string;
    weight_percent: number;
}

export interface VideoSummary {
    video_id: string;
    title: string;
    duration_ms: number;
    thumbnail_ref: string;
}

export interface VideoView {
    video_id: string;
    title: string;
    duration_ms: number;
    cues: Cue[];
    segments: Segment[];
    smart_titles: SmartTitle[];
    relevance: number;
    low_relevance: boolean;
}

export type NodeRole = 'parent' | 'related' | 'label';
export type NodeColor = 'blue' | 'green' | 'pink';

export interface GraphNode {
    id: string;
    text: string;
    role: NodeRole;
    color: NodeColor;
}

export interface GraphEdge {
    from: string;
    to: string;
}

export interface GraphPayload {
    segment: number;
    nodes: GraphNode[];
    edges: GraphEdge[];
}

export interface Note {
    t_ms: number;
    text: string;
}

export interface PanelState {
    topics: boolean;
    graph: boolean;
    notes: boolean;
}

/** Client-side session state; playback position lives here, never on the server. */
export interface UiState {
    currentVideoId: string | null;
    positionMs: number;
    activeCueIndex: number | null;
    activeSegmentIndex: number | null;
    panels: PanelState;
    noteDraft: { t_ms: number; text: string } | null;
}
