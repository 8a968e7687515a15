// Thin typed client over the ranklabel HTTP API.

import type {
  ApiError,
  DatasetDescriptor,
  DatasetListing,
  HistogramResponse,
  LabelDocument,
  RankingRequest,
  RankingResponse,
} from "./types.js";

export class ApiRequestError extends Error {
  constructor(
    public readonly status: number,
    public readonly body: ApiError,
  ) {
    super(body.message);
  }
}

async function parseOrThrow<T>(response: Response): Promise<T> {
  if (response.ok) {
    return (await response.json()) as T;
  }
  let body: ApiError;
  try {
    body = (await response.json()) as ApiError;
  } catch {
    body = { error: "http_error", message: response.statusText };
  }
  throw new ApiRequestError(response.status, body);
}

export class Client {
  constructor(private readonly base: string = "") {}

  listDatasets(): Promise<DatasetListing[]> {
    return fetch(`${this.base}/api/v1/datasets`).then((r) =>
      parseOrThrow<DatasetListing[]>(r),
    );
  }

  uploadDataset(data: Blob | string, name?: string): Promise<DatasetDescriptor> {
    const suffix = name ? `?name=${encodeURIComponent(name)}` : "";
    return fetch(`${this.base}/api/v1/datasets${suffix}`, {
      method: "POST",
      body: data,
      headers: { "Content-Type": "text/csv" },
    }).then((r) => parseOrThrow<DatasetDescriptor>(r));
  }

  getDataset(datasetId: string): Promise<DatasetDescriptor> {
    return fetch(`${this.base}/api/v1/datasets/${datasetId}`).then((r) =>
      parseOrThrow<DatasetDescriptor>(r),
    );
  }

  getHistogram(
    datasetId: string,
    attribute: string,
    bins = 10,
  ): Promise<HistogramResponse> {
    const params = new URLSearchParams({ attribute, bins: String(bins) });
    return fetch(`${this.base}/api/v1/datasets/${datasetId}/histogram?${params}`).then(
      (r) => parseOrThrow<HistogramResponse>(r),
    );
  }

  createRanking(
    datasetId: string,
    request: RankingRequest,
    signal?: AbortSignal,
  ): Promise<RankingResponse> {
    return fetch(`${this.base}/api/v1/datasets/${datasetId}/rankings`, {
      method: "POST",
      body: JSON.stringify(request),
      headers: { "Content-Type": "application/json" },
      signal,
    }).then((r) => parseOrThrow<RankingResponse>(r));
  }

  getLabel(rankingId: string): Promise<LabelDocument> {
    return fetch(`${this.base}/api/v1/rankings/${rankingId}/label`).then((r) =>
      parseOrThrow<LabelDocument>(r),
    );
  }
}
