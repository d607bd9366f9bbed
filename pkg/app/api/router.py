# app/api/router.py
from fastapi import APIRouter
from app.api.solve_router import router as solve_router
from app.api.bench_router import router as bench_router

api_router = APIRouter(prefix="/micro")
api_router.include_router(solve_router)
api_router.include_router(bench_router)
