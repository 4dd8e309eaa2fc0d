// Wire types for the judging-service assessor endpoints. The client
// talks to nothing else, so everything rendered traces back to these.

export type Level = -1 | 0 | 1 | 2;

export interface TopicProgress {
  topic_id: string;
  judged: number;
  total: number;
}

export interface AssignmentsView {
  assessor_id: string;
  topics: TopicProgress[];
}

export interface NextDocument {
  doc_id: string;
  title: string;
  body: string;
  judged_count: number;
  total: number;
}

export interface DoneMarker {
  done: true;
  judged_count: number;
  total: number;
}

export type NextResponse = NextDocument | DoneMarker;

export function isDone(r: NextResponse): r is DoneMarker {
  return (r as DoneMarker).done === true;
}

export interface JudgmentAck {
  accepted: boolean;
  judged_count: number;
  total: number;
}

export interface SearchMatch {
  offset: number;
  length: number;
}

export interface SearchResponse {
  doc_id: string;
  query: string;
  matches: SearchMatch[];
}

export interface JudgmentPayload {
  assessor_id: string;
  topic_id: string;
  doc_id: string;
  level: Level;
  revision: number;
}
