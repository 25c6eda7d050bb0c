float asin(float y)
{
    float t = y * 1.5707963f;
    for (int i = 0; i < 50; ++i) {
        float d = (sin(t) - y) / cos(t);
        t -= d;
        if (d < 1e-12f && d > -1e-12f)
            break;
    }
    return t;
}
