package demo.ms4;

import demo.ms4.store.RestockRequest;
import demo.ms4.store.Warehouse;
import org.springframework.http.HttpMethod;
import org.springframework.http.ResponseEntity;
import org.springframework.web.bind.annotation.*;
import org.springframework.web.client.RestTemplate;

@RestController
@RequestMapping("/api/restock")
public class RestockController {

    private RestTemplate restTemplate;

    public RestockController(RestTemplate restTemplate) {
        this.restTemplate = restTemplate;
    }

    @PostMapping
    public String restock(@RequestBody RestockRequest request) {
        String warehouseId = "w-1";
        ResponseEntity<Warehouse> target = restTemplate.exchange(
            "http://ms-2/api/warehouses/" + warehouseId, HttpMethod.GET, null, Warehouse.class);
        return "ok";
    }
}
